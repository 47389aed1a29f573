#include "planext/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace planext {

namespace {

struct Pt {
  double x = 0, y = 0;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s(buf);
  if (s == "-0.00") s = "0.00";
  return s;
}

// outer orbit of one component: the grounded component faces g.outer, a
// floating one faces its stored outer dart
DartId outer_dart_of(const Drawing& g, NodeId root) {
  if (g.ground != -1 && g.comp.find(g.ground) == root) return g.outer;
  auto it = g.floats.find(root);
  if (it != g.floats.end()) return it->second.outer;
  return -1;
}

}  // namespace

std::string render_svg(const Drawing& g) {
  const double R = 170, BOX = 400, C = BOX / 2;

  // drawn components, by root; isolated nodes collected separately
  std::map<NodeId, std::vector<NodeId>> comps;
  std::vector<NodeId> isolated;
  for (NodeId n = 0; n < static_cast<NodeId>(g.nodes.size()); ++n) {
    if (g.dartless(n)) {
      if (g.nodes[n].kind == NodeKind::Real) isolated.push_back(n);
    } else {
      comps[g.comp.find(n)].push_back(n);
    }
  }

  std::vector<Pt> pos(g.nodes.size());
  int strip = 0;
  for (auto& [root, members] : comps) {
    // pin each node of the outer orbit at its first visit
    std::map<NodeId, double> pinned;
    DartId od = outer_dart_of(g, root);
    std::vector<DartId> orbit;
    for (DartId d = od;;) {
      orbit.push_back(d);
      d = g.face_next(d);
      if (d == od) break;
    }
    for (size_t i = 0; i < orbit.size(); ++i) {
      NodeId n = g.darts[orbit[i]].origin;
      if (!pinned.count(n))
        pinned[n] = 2 * M_PI * static_cast<double>(i) / static_cast<double>(orbit.size());
    }
    double cx = strip * BOX + C, cy = C;
    std::vector<NodeId> inner;
    for (NodeId n : members) {
      auto it = pinned.find(n);
      if (it != pinned.end())
        pos[n] = {cx + R * std::cos(it->second), cy + R * std::sin(it->second)};
      else {
        pos[n] = {cx, cy};
        inner.push_back(n);
      }
    }
    // barycentric relaxation; the count is fixed so the output never drifts
    for (int it = 0; it < 300; ++it)
      for (NodeId n : inner) {
        double sx = 0, sy = 0;
        for (DartId d : g.nodes[n].rot) {
          NodeId m = g.head(d);
          sx += pos[m].x;
          sy += pos[m].y;
        }
        double deg = static_cast<double>(g.nodes[n].rot.size());
        pos[n] = {sx / deg, sy / deg};
      }
    ++strip;
  }
  if (!isolated.empty()) {
    double cx = strip * BOX + 40, cy = C;
    for (NodeId n : isolated) {
      pos[n] = {cx, cy};
      cx += 50;
    }
    ++strip;
  }
  if (strip == 0) strip = 1;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << strip * BOX << " " << BOX
      << "\" font-family=\"sans-serif\" font-size=\"13\">\n";

  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edges.size()); ++e) {
    if (!g.drawn[e]) continue;
    out << "  <polyline points=\"";
    for (int i = 0; i <= g.segments(e); ++i) {
      NodeId n = g.chain_point(e, i);
      if (i) out << ' ';
      out << fmt(pos[n].x) << ',' << fmt(pos[n].y);
    }
    const char* color = g.pseudo_edge[e] ? "#999" : g.is_h_edge[e] ? "#1f3a5f" : "#c0392b";
    out << "\" fill=\"none\" stroke=\"" << color << '"';
    if (g.pseudo_edge[e]) out << " stroke-dasharray=\"6 4\"";
    out << " stroke-width=\"1.6\"/>\n";
  }

  for (NodeId n = 0; n < static_cast<NodeId>(g.nodes.size()); ++n) {
    if (g.nodes[n].kind == NodeKind::CrossingPt) {
      if (g.dartless(n)) continue;
      out << "  <rect x=\"" << fmt(pos[n].x - 4) << "\" y=\"" << fmt(pos[n].y - 4)
          << "\" width=\"8\" height=\"8\" fill=\"#fff\" stroke=\"#555\" transform=\"rotate(45 "
          << fmt(pos[n].x) << ' ' << fmt(pos[n].y) << ")\"/>\n";
      continue;
    }
    if (g.dartless(n) && std::find(isolated.begin(), isolated.end(), n) == isolated.end())
      continue;
    out << "  <circle cx=\"" << fmt(pos[n].x) << "\" cy=\"" << fmt(pos[n].y)
        << "\" r=\"9\" fill=\"#fff\" stroke=\"#333\"/>\n";
    out << "  <text x=\"" << fmt(pos[n].x) << "\" y=\"" << fmt(pos[n].y + 4.5)
        << "\" text-anchor=\"middle\">" << g.nodes[n].v << "</text>\n";
  }

  out << "</svg>\n";
  return out.str();
}

}  // namespace planext
