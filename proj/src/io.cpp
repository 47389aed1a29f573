#include "planext/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <map>
#include <set>

#include "planext/oracle.hpp"
#include "planext/validate.hpp"

using nlohmann::json;

namespace planext {

namespace {

[[noreturn]] void sem(const std::string& path, const std::string& what) {
  throw StructuralError(path + ": " + what);
}

int as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) sem(path, "expected an integer");
  return v.get<int>();
}

std::pair<int, int> as_pair(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) sem(path, "expected a pair");
  return {as_int(v[0], path + "[0]"), as_int(v[1], path + "[1]")};
}

const json& member(const json& j, const char* key, bool required) {
  static const json missing;
  auto it = j.find(key);
  if (it == j.end()) {
    if (required) sem("$", std::string("missing member \"") + key + "\"");
    return missing;
  }
  return *it;
}

// shared emitter: a drawing plus which edges go into which list
json emit_document(const Drawing& g, const std::vector<EdgeId>& h_list,
                   const std::vector<EdgeId>& add_list, const std::vector<Vertex>& add_vertices,
                   bool ic) {
  std::map<EdgeId, int> fid;  // stored edge id -> file id
  for (EdgeId e : h_list) fid[e] = static_cast<int>(fid.size());
  for (EdgeId e : add_list) fid[e] = static_cast<int>(fid.size());

  json j;
  {
    std::vector<Vertex> vs;
    for (const auto& n : g.nodes)
      if (n.kind == NodeKind::Real) vs.push_back(n.v);
    std::sort(vs.begin(), vs.end());
    j["vertices"] = vs;
  }
  auto edge_list = [&](const std::vector<EdgeId>& ids) {
    json out = json::array();
    for (EdgeId e : ids) out.push_back({g.edges[e].u, g.edges[e].v});
    return out;
  };
  j["h_edges"] = edge_list(h_list);
  j["add_edges"] = edge_list(add_list);
  {
    std::vector<Vertex> av = add_vertices;
    std::sort(av.begin(), av.end());
    j["add_vertices"] = av;
  }

  // crossing points in canonical order: by their file edge pair
  std::vector<std::pair<std::array<int, 2>, NodeId>> xs;
  for (EdgeId e : h_list) {
    for (NodeId x : g.chain[e]) {
      EdgeId f = -1;
      for (DartId d : g.nodes[x].rot)
        if (g.darts[d].edge != e) f = g.darts[d].edge;
      if (fid.at(e) < fid.at(f)) xs.push_back({{fid.at(e), fid.at(f)}, x});
    }
  }
  std::sort(xs.begin(), xs.end());
  std::map<NodeId, std::string> xname;
  {
    json jx = json::array();
    for (size_t i = 0; i < xs.size(); ++i) {
      jx.push_back({{"edges", xs[i].first}});
      xname[xs[i].second] = "x" + std::to_string(i);
    }
    j["crossings"] = jx;
  }

  {
    json jr = json::object();
    for (NodeId n = 0; n < static_cast<NodeId>(g.nodes.size()); ++n) {
      if (g.nodes[n].rot.empty()) continue;
      std::string key = g.nodes[n].kind == NodeKind::Real ? std::to_string(g.nodes[n].v)
                                                          : xname.at(n);
      json rs = json::array();
      for (DartId d : g.nodes[n].rot)
        rs.push_back({fid.at(g.darts[d].edge), g.darts[d].seg});
      jr[key] = rs;
    }
    j["rotation"] = jr;
  }
  if (g.outer != -1)
    j["outer"] = {fid.at(g.darts[g.outer].edge), g.darts[g.outer].seg,
                  g.is_forward(g.outer) ? 1 : 0};
  j["mode"] = ic ? "ic" : "1planar";
  return j;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  json j = json::parse(text);  // syntax errors surface as json exceptions
  if (!j.is_object()) sem("$", "expected an object");
  static const std::set<std::string> known = {"vertices",     "h_edges", "add_edges",
                                              "add_vertices", "crossings", "rotation",
                                              "outer",        "mode"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) sem("$." + it.key(), "unknown member");

  Instance inst;
  Drawing& g = inst.g;

  {
    const json& jv = member(j, "vertices", true);
    if (!jv.is_array()) sem("$.vertices", "expected a list");
    for (size_t i = 0; i < jv.size(); ++i) {
      std::string path = "$.vertices[" + std::to_string(i) + "]";
      int v = as_int(jv[i], path);
      if (v < 0) sem(path, "vertex ids are non-negative");
      if (g.vnode.count(v)) sem(path, "duplicate vertex " + std::to_string(v));
      g.add_node(v);
    }
  }

  auto read_edges = [&](const char* key, bool h) {
    const json& je = member(j, key, true);
    std::string base = std::string("$.") + key;
    if (!je.is_array()) sem(base, "expected a list");
    for (size_t i = 0; i < je.size(); ++i) {
      std::string path = base + "[" + std::to_string(i) + "]";
      auto [u, v] = as_pair(je[i], path);
      if (u == v) sem(path, "self loop");
      if (!g.vnode.count(u) || !g.vnode.count(v)) sem(path, "endpoint is not a listed vertex");
      for (const Edge& o : g.edges)
        if ((o.u == u && o.v == v) || (o.u == v && o.v == u)) sem(path, "duplicate edge");
      g.add_edge(u, v, h);
    }
  };
  read_edges("h_edges", true);
  int nh = static_cast<int>(g.edges.size());
  read_edges("add_edges", false);
  for (EdgeId e = nh; e < static_cast<EdgeId>(g.edges.size()); ++e) inst.add_edges.push_back(e);

  {
    const json& ja = member(j, "add_vertices", true);
    if (!ja.is_array()) sem("$.add_vertices", "expected a list");
    std::set<int> seen;
    for (size_t i = 0; i < ja.size(); ++i) {
      std::string path = "$.add_vertices[" + std::to_string(i) + "]";
      int v = as_int(ja[i], path);
      if (!g.vnode.count(v)) sem(path, "not a listed vertex");
      if (!seen.insert(v).second) sem(path, "listed twice");
      inst.add_vertices.push_back(v);
    }
    for (EdgeId e = 0; e < nh; ++e)
      if (seen.count(g.edges[e].u) || seen.count(g.edges[e].v))
        sem("$.h_edges[" + std::to_string(e) + "]", "fixed edge at an added vertex");
  }

  {
    const json& jx = member(j, "crossings", true);
    if (!jx.is_array()) sem("$.crossings", "expected a list");
    std::vector<char> in_x(g.edges.size(), 0);
    for (size_t i = 0; i < jx.size(); ++i) {
      std::string path = "$.crossings[" + std::to_string(i) + "]";
      if (!jx[i].is_object() || !jx[i].contains("edges")) sem(path, "expected {\"edges\": [e, f]}");
      auto [e, f] = as_pair(jx[i]["edges"], path + ".edges");
      if (e < 0 || e >= nh || f < 0 || f >= nh) sem(path, "crossing outside the fixed edges");
      if (e == f) sem(path, "edge crossing itself");
      const Edge &a = g.edges[e], &b = g.edges[f];
      if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v)
        sem(path, "crossing between adjacent edges");
      for (int eid : {e, f})
        if (in_x[eid]) sem(path, "edge " + std::to_string(eid) + " is in two crossings");
      in_x[e] = in_x[f] = 1;
      NodeId x = g.add_node(-1);
      g.chain[e].push_back(x);
      g.chain[f].push_back(x);
    }
  }

  for (EdgeId e = 0; e < nh; ++e) {
    g.drawn[e] = 1;
    for (int s = 0; s < g.segments(e); ++s) {
      DartId df = g.new_dart(g.chain_point(e, s), e, s);
      DartId db = g.new_dart(g.chain_point(e, s + 1), e, s);
      g.darts[df].twin = db;
      g.darts[db].twin = df;
      g.edarts[e].push_back(df);
      g.edarts[e].push_back(db);
    }
  }

  {
    const json& jr = member(j, "rotation", nh > 0);
    std::map<std::string, NodeId> names;
    for (NodeId n = 0; n < static_cast<NodeId>(g.nodes.size()); ++n)
      names[g.nodes[n].kind == NodeKind::Real
                ? std::to_string(g.nodes[n].v)
                : "x" + std::to_string(std::count_if(g.nodes.begin(), g.nodes.begin() + n,
                                                     [](const MapNode& m) {
                                                       return m.kind == NodeKind::CrossingPt;
                                                     }))] = n;
    std::vector<char> placed(g.darts.size(), 0);
    if (!jr.is_null()) {
      if (!jr.is_object()) sem("$.rotation", "expected an object");
      for (auto it = jr.begin(); it != jr.end(); ++it) {
        std::string path = "$.rotation." + it.key();
        auto nit = names.find(it.key());
        if (nit == names.end()) sem(path, "unknown node");
        NodeId n = nit->second;
        if (!it.value().is_array() || it.value().empty()) sem(path, "expected a non-empty list");
        for (size_t i = 0; i < it.value().size(); ++i) {
          std::string ep = path + "[" + std::to_string(i) + "]";
          auto [e, s] = as_pair(it.value()[i], ep);
          if (e < 0 || e >= nh) sem(ep, "not a fixed edge");
          if (s < 0 || s >= g.segments(e)) sem(ep, "no such segment");
          DartId d = -1;
          for (DartId c : g.edarts[e])
            if (g.darts[c].seg == s && g.darts[c].origin == n) d = c;
          if (d == -1) sem(ep, "segment does not touch this node");
          if (placed[d]) sem(ep, "dart listed twice");
          placed[d] = 1;
          g.nodes[n].rot.push_back(d);
        }
      }
    }
    for (DartId d = 0; d < static_cast<DartId>(g.darts.size()); ++d)
      if (!placed[d])
        sem("$.rotation", "node " +
                              (g.nodes[g.darts[d].origin].kind == NodeKind::Real
                                   ? std::to_string(g.nodes[g.darts[d].origin].v)
                                   : std::string("(crossing)")) +
                              " is missing darts");
  }

  for (DartId d = 0; d < static_cast<DartId>(g.darts.size()); ++d)
    g.comp.unite(g.darts[d].origin, g.darts[g.darts[d].twin].origin);

  {
    const json& jo = member(j, "outer", false);
    if (jo.is_null()) {
      if (!g.darts.empty()) sem("$", "missing member \"outer\"");
    } else {
      if (!jo.is_array() || jo.size() != 3) sem("$.outer", "expected [edge, seg, dir]");
      int e = as_int(jo[0], "$.outer[0]"), s = as_int(jo[1], "$.outer[1]"),
          dir = as_int(jo[2], "$.outer[2]");
      if (e < 0 || e >= nh) sem("$.outer[0]", "not a fixed edge");
      if (s < 0 || s >= g.segments(e)) sem("$.outer[1]", "no such segment");
      if (dir != 0 && dir != 1) sem("$.outer[2]", "dir is 0 or 1");
      g.outer = g.seg_dart(e, s, dir == 1);
      g.ground = g.comp.find(g.darts[g.outer].origin);
    }
  }

  // separate drawn components float in the outer cell; their facing orbit is
  // not part of the format, so the first dart stands in
  for (NodeId n = 0; n < static_cast<NodeId>(g.nodes.size()); ++n) {
    if (g.nodes[n].rot.empty()) continue;
    NodeId r = g.comp.find(n);
    if (r == g.comp.find(g.ground) || g.floats.count(r)) continue;
    DartId first = -1;
    for (DartId d = 0; d < static_cast<DartId>(g.darts.size()) && first == -1; ++d)
      if (g.comp.find(g.darts[d].origin) == r) first = d;
    g.floats[r] = FloatInfo{g.outer, first};
  }

  {
    const json& jm = member(j, "mode", false);
    if (!jm.is_null()) {
      if (!jm.is_string()) sem("$.mode", "expected a string");
      std::string m = jm.get<std::string>();
      if (m != "1planar" && m != "ic") sem("$.mode", "expected \"1planar\" or \"ic\"");
      inst.ic = m == "ic";
    }
  }

  std::string why;
  if (!g.structurally_sound(&why)) sem("$", why);
  ValidationReport r = inst.ic ? validate_ic(g) : validate_one_planar(g);
  if (!r.ok()) sem("$", r.brief());
  return inst;
}

std::string write_instance(const Instance& inst) {
  const Drawing& g = inst.g;
  std::vector<EdgeId> h_list, add_list;
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edges.size()); ++e) {
    if (g.pseudo_edge[e]) throw StructuralError("cannot serialize a scratch wall");
    (g.is_h_edge[e] ? h_list : add_list).push_back(e);
  }
  return emit_document(g, h_list, add_list, inst.add_vertices, inst.ic).dump(2) + "\n";
}

std::string write_drawing(const Drawing& g) {
  std::vector<EdgeId> all;
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edges.size()); ++e) {
    if (g.pseudo_edge[e]) throw StructuralError("cannot serialize a scratch wall");
    if (!g.drawn[e]) throw StructuralError("cannot serialize an unfinished drawing");
    all.push_back(e);
  }
  return emit_document(g, all, {}, {}, false).dump(2) + "\n";
}

Drawing parse_drawing(const std::string& text) {
  Instance inst = parse_instance(text);
  if (!inst.add_vertices.empty() || !inst.add_edges.empty())
    sem("$", "a drawing file cannot have added parts");
  return std::move(inst.g);
}

// generation ------------------------------------------------------------------

namespace {

struct Rng {
  std::uint64_t s;
  explicit Rng(std::uint64_t seed) : s(seed ? seed : 0x243f6a8885a308d3ull) {}
  std::uint64_t next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  }
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
};

}  // namespace

Instance generate_instance(const GenParams& par) {
  if (par.n < 2) throw StructuralError("need at least two vertices");
  if (par.edge_dels < 0 || par.vertex_dels < 0) throw StructuralError("negative deletions");
  if (par.vertex_dels >= par.n) throw StructuralError("cannot delete every vertex");
  Rng rng(par.seed);

  // a sparse draw can make the requested deletions infeasible outright, so
  // when the deletion attempts run dry we draw a fresh graph and try again
  for (int build = 0; build < 50; ++build) {
    Drawing full;
    for (int v = 0; v < par.n; ++v) full.add_node(v);
    PlacementRules plain;
    plain.allow_crossings = false;
    PlacementRules crossy;
    crossy.ic = par.ic;
    std::set<std::pair<int, int>> used;
    auto add_placed = [&](int u, int v, const PlacementRules& rules) {
      EdgeId e = full.add_edge(u, v, true);
      auto ps = enumerate_placements(full, e, rules);
      if (ps.empty()) throw StructuralError("generated edge has nowhere to go");
      full.place_edge(ps[rng.below(static_cast<int>(ps.size()))]);
      used.insert({std::min(u, v), std::max(u, v)});
    };
    for (int v = 1; v < par.n; ++v) add_placed(v, rng.below(v), plain);
    int extra = par.n / 2 + rng.below(par.n / 2 + 1);
    for (int t = 0; t < extra * 4 && extra > 0; ++t) {
      int u = rng.below(par.n), v = rng.below(par.n);
      if (u == v || used.count({std::min(u, v), std::max(u, v)})) continue;
      EdgeId e = full.add_edge(u, v, true);
      auto ps = enumerate_placements(full, e, crossy);
      if (ps.empty()) {
        full.edges.pop_back();
        full.is_h_edge.pop_back();
        full.pseudo_edge.pop_back();
        full.drawn.pop_back();
        full.chain.pop_back();
        full.edarts.pop_back();
        continue;
      }
      full.place_edge(ps[rng.below(static_cast<int>(ps.size()))]);
      used.insert({std::min(u, v), std::max(u, v)});
      --extra;
    }

    int ne = static_cast<int>(full.edges.size());
    for (int attempt = 0; attempt < 60; ++attempt) {
      std::set<int> del_v;
      while (static_cast<int>(del_v.size()) < par.vertex_dels) del_v.insert(rng.below(par.n));
      std::vector<char> keep(ne, 1);
      int forced = 0;
      for (EdgeId e = 0; e < ne; ++e)
        if (del_v.count(full.edges[e].u) || del_v.count(full.edges[e].v)) {
          keep[e] = 0;
          ++forced;
        }
      std::vector<EdgeId> can;
      for (EdgeId e = 0; e < ne; ++e)
        if (keep[e]) can.push_back(e);
      if (static_cast<int>(can.size()) < par.edge_dels) break;
      for (int d = 0; d < par.edge_dels; ++d) {
        int i = rng.below(static_cast<int>(can.size()));
        keep[can[i]] = 0;
        can.erase(can.begin() + i);
      }

      // the fixed part must stay connected across its remaining vertices
      Dsu dsu(par.n);
      for (EdgeId e = 0; e < ne; ++e)
        if (keep[e]) dsu.unite(full.edges[e].u, full.edges[e].v);
      bool connected = true;
      int root = -1;
      for (int v = 0; v < par.n; ++v) {
        if (del_v.count(v)) continue;
        if (root == -1) root = dsu.find(v);
        connected &= dsu.find(v) == root;
      }
      if (!connected) continue;

      Instance inst;
      inst.g = restrict_drawing(full, keep);
      inst.ic = par.ic;
      for (EdgeId e = 0; e < ne; ++e)
        if (!keep[e]) {
          inst.g.is_h_edge[e] = 0;
          inst.add_edges.push_back(e);
        }
      for (int v : del_v) inst.add_vertices.push_back(v);
      return inst;
    }
  }
  throw StructuralError("could not keep the fixed part connected; fewer deletions needed");
}

}  // namespace planext
