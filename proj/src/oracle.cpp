#include "planext/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace planext {

namespace {

bool meets_crossed(const Drawing& g, Vertex v) {
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edges.size()); ++e) {
    if (!g.drawn[e] || g.pseudo_edge[e]) continue;
    if (g.edges[e].u != v && g.edges[e].v != v) continue;
    if (g.real_crossings(e) > 0) return true;
  }
  return false;
}

bool share_endpoint(const Edge& a, const Edge& b) {
  return a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v;
}

bool crossable_seg(const Drawing& g, DartId sd, EdgeId e, const PlacementRules& rules) {
  EdgeId f = g.darts[sd].edge;
  if (f == e) return false;
  if (g.pseudo_edge[f]) return false;  // walls are never crossed by placements
  if (g.uncrossable.count(g.forward_dart(sd))) return false;
  if (!g.pseudo_edge[e]) {
    if (g.real_crossings(f) > 0) return false;
    if (rules.mode == Mode::Strict && !g.chain[f].empty()) return false;
    if (share_endpoint(g.edges[e], g.edges[f])) return false;
    if (rules.ic) {
      for (Vertex v : {g.edges[e].u, g.edges[e].v, g.edges[f].u, g.edges[f].v})
        if (meets_crossed(g, v)) return false;
    }
  }
  if (rules.crossable && !rules.crossable(g, sd)) return false;
  return true;
}

struct Hop {
  int cell = -1;
  bool split = false;
  int orbit = -1;  // the orbit the hop splits
};

// Euler per drawn component; rejects surgeries that left the sphere
bool still_plane(const Drawing& g) {
  Cells c(g);
  std::map<NodeId, std::array<long long, 3>> cnt;
  for (NodeId n = 0; n < static_cast<NodeId>(g.nodes.size()); ++n) {
    if (g.nodes[n].rot.empty()) continue;
    auto& a = cnt[g.comp.find(n)];
    a[0]++;
    a[1] += static_cast<long long>(g.nodes[n].rot.size());
  }
  for (int i = 0; i < c.orbit_count(); ++i)
    cnt[g.comp.find(g.darts[c.orbit(i)[0]].origin)][2]++;
  for (const auto& [root, a] : cnt)
    if (a[0] - a[1] / 2 + a[2] != 2) return false;
  return true;
}

struct FloatRow {
  NodeId root;
  int host_cell;
  int outer_orbit;
};

// expand a placement into one copy per side assignment of affected floats;
// own_root names the floating component the whole curve stays inside, or -1
void emit(const std::vector<FloatRow>& fl, EdgePlacement p, const std::vector<Hop>& hops,
          const std::set<NodeId>& involved, NodeId own_root, std::vector<EdgePlacement>& out) {
  std::vector<std::vector<FloatSide>> choice_sets;
  for (const FloatRow& f : fl) {
    if (involved.count(f.root)) continue;
    std::vector<FloatSide> opts;
    for (int h = 0; h < static_cast<int>(hops.size()); ++h) {
      if (!hops[h].split || hops[h].cell != f.host_cell) continue;
      opts.push_back({f.root, h, true});
      opts.push_back({f.root, h, false});
    }
    if (!opts.empty()) choice_sets.push_back(std::move(opts));
  }
  if (own_root != -1) {
    // a split running through the floating component's own facing orbit
    // re-chooses which piece keeps facing the host
    std::vector<FloatSide> base;
    for (int h = 0; h < static_cast<int>(hops.size()); ++h) {
      if (!hops[h].split) continue;
      for (const FloatRow& f : fl)
        if (f.root == own_root && f.outer_orbit == hops[h].orbit) {
          base.push_back({-1, h, true});
          base.push_back({-1, h, false});
        }
    }
    if (!base.empty()) choice_sets.push_back(std::move(base));
  }
  if (choice_sets.empty()) {
    out.push_back(std::move(p));
    return;
  }
  std::vector<size_t> pick(choice_sets.size(), 0);
  for (;;) {
    EdgePlacement q = p;
    for (size_t i = 0; i < pick.size(); ++i) q.sides.push_back(choice_sets[i][pick[i]]);
    out.push_back(std::move(q));
    size_t i = 0;
    while (i < pick.size() && ++pick[i] == choice_sets[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
}

}  // namespace

std::vector<EdgePlacement> enumerate_placements(const Drawing& g, EdgeId e,
                                                const PlacementRules& rules) {
  if (g.drawn[e]) throw PlacementError("edge already drawn");
  std::vector<EdgePlacement> out;
  NodeId nu = g.node_of(g.edges[e].u), nv = g.node_of(g.edges[e].v);
  bool fu = g.dartless(nu), fv = g.dartless(nv);
  Cells cells(g);

  auto corner_pass = [&](const Corner& c) { return !rules.corner_ok || rules.corner_ok(g, c); };
  auto cell_pass = [&](int c) { return !rules.cell_ok || rules.cell_ok(g, cells, c); };

  std::vector<FloatRow> fl;
  for (const auto& [root, fi] : g.floats)
    fl.push_back({root, cells.cell_of(fi.host), cells.orbit_of(fi.outer)});

  if (fu && fv) {
    if (g.outer == -1) {
      EdgePlacement p;
      p.e = e;
      p.cu = {nu, -1};
      p.cv = {nv, -1};
      out.push_back(p);
      return out;
    }
    for (int c = 0; c < cells.count(); ++c) {
      if (!cell_pass(c)) continue;
      EdgePlacement p;
      p.e = e;
      p.cu = {nu, -1};
      p.cv = {nv, -1};
      p.host = cells.orbit(cells.orbits_in_cell(c)[0])[0];
      out.push_back(p);
    }
    if (rules.allow_crossings) {
      for (DartId sd = 0; sd < static_cast<DartId>(g.darts.size()); ++sd) {
        if (!crossable_seg(g, sd, e, rules)) continue;
        if (!cell_pass(cells.cell_of(sd)) || !cell_pass(cells.cell_of(g.darts[sd].twin)))
          continue;
        EdgePlacement p;
        p.e = e;
        p.cu = {nu, -1};
        p.cv = {nv, -1};
        p.crossings = {CrossSpec{sd}};
        out.push_back(p);
      }
    }
    return out;
  }

  NodeId ru = g.comp.find(nu), rv = g.comp.find(nv);
  for (const Corner& cu : g.corners(nu)) {
    if (!corner_pass(cu)) continue;
    int cu_cell = cells.cell_of_corner(cu);
    for (const Corner& cv : g.corners(nv)) {
      if (!corner_pass(cv)) continue;
      int cv_cell = cells.cell_of_corner(cv);
      if (cu_cell == -1 && cv_cell == -1) continue;
      if (cu_cell != -1 && cv_cell != -1 && cu_cell != cv_cell) continue;
      int run = cu_cell != -1 ? cu_cell : cv_cell;
      if (!cell_pass(run)) continue;
      EdgePlacement p;
      p.e = e;
      p.cu = cu;
      p.cv = cv;
      Hop h;
      h.cell = run;
      h.split = !fu && !fv && ru == rv;
      h.orbit = h.split ? cells.orbit_of(cu.at) : -1;
      NodeId own = h.split && g.floats.count(ru) ? ru : -1;
      emit(fl, std::move(p), {h}, {ru, rv}, own, out);
    }
    if (!rules.allow_crossings) continue;
    for (DartId sd = 0; sd < static_cast<DartId>(g.darts.size()); ++sd) {
      if (!crossable_seg(g, sd, e, rules)) continue;
      int in_cell = cells.cell_of(sd);
      if (cu_cell != -1 && in_cell != cu_cell) continue;
      int out_cell = cells.cell_of(g.darts[sd].twin);
      if (!cell_pass(in_cell) || !cell_pass(out_cell)) continue;
      NodeId rf = g.comp.find(g.darts[sd].origin);
      for (const Corner& cv : g.corners(nv)) {
        if (!corner_pass(cv)) continue;
        int cv_cell = cells.cell_of_corner(cv);
        if (cv_cell != -1 && cv_cell != out_cell) continue;
        EdgePlacement p;
        p.e = e;
        p.cu = cu;
        p.cv = cv;
        p.crossings = {CrossSpec{sd}};
        Hop h0, h1;
        h0.cell = in_cell;
        h0.split = !fu && ru == rf;
        h0.orbit = h0.split ? cells.orbit_of(sd) : -1;
        h1.cell = out_cell;
        h1.split = !fv && (rv == ru || rv == rf);
        h1.orbit = h1.split ? cells.orbit_of(g.darts[sd].twin) : -1;
        if (!fu && !fv && in_cell == out_cell && h0.split) {
          // crossing back into the cell the first leg just split: only exit
          // corners on the piece behind the crossing remain reachable
          Drawing trial = g;
          try {
            trial.place_edge(p, false);
          } catch (const PlacementError&) {
            continue;
          }
          if (!still_plane(trial)) continue;
        }
        NodeId own = (fu || ru == rf) && (fv || rv == rf) && g.floats.count(rf) ? rf : -1;
        emit(fl, std::move(p), {h0, h1}, {ru, rv, rf}, own, out);
      }
    }
  }
  return out;
}

std::vector<EdgeId> anchored_edge_order(const Drawing& g, const std::vector<Vertex>& added,
                                        const std::vector<EdgeId>& edges) {
  std::set<Vertex> pend(added.begin(), added.end());
  std::vector<Vertex> frontier;
  {
    std::map<Vertex, NodeId> sorted(g.vnode.begin(), g.vnode.end());
    for (const auto& [v, n] : sorted)
      if (!pend.count(v) && !g.pseudo_node[n]) frontier.push_back(v);
  }
  std::map<Vertex, std::vector<EdgeId>> inc;
  for (EdgeId e : edges) {
    inc[g.edges[e].u].push_back(e);
    inc[g.edges[e].v].push_back(e);
  }
  size_t want = edges.size();
  std::set<Vertex> seen(frontier.begin(), frontier.end());
  std::vector<EdgeId> order;
  std::set<EdgeId> taken;
  size_t qi = 0;
  while (order.size() < want) {
    for (; qi < frontier.size(); ++qi) {
      Vertex u = frontier[qi];
      auto it = inc.find(u);
      if (it == inc.end()) continue;
      for (EdgeId e : it->second) {
        if (!taken.insert(e).second) continue;
        order.push_back(e);
        Vertex w = g.edges[e].u == u ? g.edges[e].v : g.edges[e].u;
        if (seen.insert(w).second) frontier.push_back(w);
      }
    }
    if (order.size() == want) break;
    // a part of the graph never reaches the fixed drawing: seed its smallest
    // vertex and let the enumerator draw it as a floating component
    Vertex seed = -1;
    for (EdgeId e : edges) {
      if (taken.count(e)) continue;
      Vertex lo = std::min(g.edges[e].u, g.edges[e].v);
      if (seed == -1 || lo < seed) seed = lo;
    }
    frontier.push_back(seed);
    seen.insert(seed);
  }
  return order;
}

std::vector<EdgeId> anchored_edge_order(const Drawing& g, const std::vector<Vertex>& added) {
  std::vector<EdgeId> undrawn;
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edges.size()); ++e)
    if (!g.drawn[e] && !g.pseudo_edge[e]) undrawn.push_back(e);
  return anchored_edge_order(g, added, undrawn);
}

namespace {

struct Search {
  const std::vector<EdgeId>& order;
  const OracleOptions& opt;
  long long tried = 0;
  std::set<std::string> keys;
  std::vector<Solution> sols;
  std::vector<PlaceStep> trail;
  bool stop = false;

  void dfs(const Drawing& g, size_t i) {
    if (stop) return;
    if (i == order.size()) {
      ValidationReport r =
          opt.rules.ic ? validate_ic(g, opt.rules.mode) : validate_one_planar(g, opt.rules.mode);
      if (!r.ok()) throw StructuralError("search built an invalid drawing: " + r.brief());
      if (keys.insert(map_key(g)).second) {
        if (opt.keep_solutions || sols.empty()) sols.push_back({g, trail});
        if (opt.max_solutions >= 0 && static_cast<int>(keys.size()) >= opt.max_solutions)
          stop = true;
      }
      return;
    }
    for (const EdgePlacement& p : enumerate_placements(g, order[i], opt.rules)) {
      if (stop) return;
      ++tried;
      if (opt.budget >= 0 && tried > opt.budget) throw BudgetExceeded("placement search");
      Drawing g2 = g;
      g2.place_edge(p, false);
      trail.push_back(to_portable(g, p));
      dfs(g2, i + 1);
      trail.pop_back();
    }
  }
};

}  // namespace

OracleResult oracle_extend(const Drawing& start, const std::vector<EdgeId>& order,
                           const OracleOptions& opt) {
  Search s{order, opt};
  s.dfs(start, 0);
  OracleResult r;
  r.yes = !s.keys.empty();
  r.tried = s.tried;
  r.solutions = std::move(s.sols);
  return r;
}

OracleResult oracle_extend(const Instance& inst, const OracleOptions& opt) {
  OracleOptions o = opt;
  o.rules.ic = o.rules.ic || inst.ic;
  return oracle_extend(inst.g, anchored_edge_order(inst.g, inst.add_vertices, inst.add_edges), o);
}

}  // namespace planext
