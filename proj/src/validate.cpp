#include "planext/validate.hpp"

#include <array>
#include <map>
#include <sstream>

namespace planext {

std::string ValidationReport::brief() const {
  if (ok()) return "ok";
  std::ostringstream os;
  for (const auto& v : violations) {
    os << v.what;
    if (v.e != -1) os << " (edge " << v.e << ")";
    if (v.n != -1) os << " (node " << v.n << ")";
    os << "; ";
  }
  return os.str();
}

namespace {

// the two distinct edges at a crossing point
std::pair<EdgeId, EdgeId> point_edges(const Drawing& g, NodeId x) {
  return {g.darts[g.nodes[x].rot[0]].edge, g.darts[g.nodes[x].rot[1]].edge};
}

void check_crossings(const Drawing& g, Mode mode, ValidationReport& r) {
  for (NodeId x = 0; x < static_cast<NodeId>(g.nodes.size()); ++x) {
    if (g.nodes[x].kind != NodeKind::CrossingPt) continue;
    auto [e, f] = point_edges(g, x);
    bool ep = g.pseudo_edge[e], fp = g.pseudo_edge[f];
    if (ep && fp) r.add("two walls cross", e, x);
    const Edge& a = g.edges[e];
    const Edge& b = g.edges[f];
    if (!ep && !fp && (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v))
      r.add("adjacent edges cross", e, x);
  }
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edges.size()); ++e) {
    if (!g.drawn[e] || g.pseudo_edge[e]) continue;
    int c = mode == Mode::Strict ? static_cast<int>(g.chain[e].size()) : g.real_crossings(e);
    if (c > 1) r.add("edge crossed more than once", e);
  }
  if (mode == Mode::Strict) {
    for (EdgeId e = 0; e < static_cast<EdgeId>(g.edges.size()); ++e)
      if (g.pseudo_edge[e]) r.add("wall edge in a strict drawing", e);
    for (NodeId n = 0; n < static_cast<NodeId>(g.nodes.size()); ++n)
      if (g.pseudo_node[n]) r.add("wall vertex in a strict drawing", -1, n);
  }
}

void check_genus(const Drawing& g, ValidationReport& r) {
  Cells c(g);
  std::map<NodeId, std::array<long long, 3>> count;  // comp root -> v, darts, faces
  for (NodeId n = 0; n < static_cast<NodeId>(g.nodes.size()); ++n) {
    if (g.nodes[n].rot.empty()) continue;
    auto& a = count[g.comp.find(n)];
    a[0]++;
    a[1] += static_cast<long long>(g.nodes[n].rot.size());
  }
  for (int i = 0; i < c.orbit_count(); ++i)
    count[g.comp.find(g.darts[c.orbit(i)[0]].origin)][2]++;
  for (const auto& [root, a] : count) {
    if (a[0] - a[1] / 2 + a[2] != 2) r.add("component is not plane", -1, root);
  }
}

}  // namespace

ValidationReport validate_one_planar(const Drawing& g, Mode mode) {
  ValidationReport r;
  std::string why;
  if (!g.structurally_sound(&why)) {
    r.add("structure: " + why);
    return r;
  }
  check_crossings(g, mode, r);
  check_genus(g, r);
  return r;
}

ValidationReport validate_ic(const Drawing& g, Mode mode) {
  ValidationReport r = validate_one_planar(g, mode);
  if (!r.ok()) return r;
  std::map<Vertex, int> met;  // vertex -> crossed incident edges
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edges.size()); ++e) {
    if (!g.drawn[e] || g.pseudo_edge[e]) continue;
    if (g.real_crossings(e) == 0) continue;
    met[g.edges[e].u]++;
    met[g.edges[e].v]++;
  }
  for (const auto& [v, n] : met)
    if (n > 1) r.add("vertex on two crossed edges: " + std::to_string(v));
  return r;
}

bool is_extension(const Drawing& candidate, const Drawing& fixed, std::string* why) {
  std::string w;
  if (!candidate.structurally_sound(&w)) {
    if (why) *why = "candidate: " + w;
    return false;
  }
  Drawing r = restrict_drawing(candidate, candidate.is_h_edge);
  return same_map(r, fixed, why);
}

}  // namespace planext
