#include "planext/vertex_flow.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

namespace planext {

namespace {

constexpr int kInf = 1 << 29;

// added edges sorted by the hub they leave from; target -> edge id
struct HubEdgeSets {
  std::map<Vertex, EdgeId> r, b;
  std::vector<EdgeId> between;  // both endpoints are hubs
};

HubEdgeSets classify(const Instance& inst, Vertex rh, Vertex bh) {
  const std::set<Vertex> added(inst.add_vertices.begin(), inst.add_vertices.end());
  HubEdgeSets out;
  for (EdgeId e : inst.add_edges) {
    if (inst.g.drawn[e]) throw StructuralError("flow solver: added edge already drawn");
    Vertex u = inst.g.edges[e].u, v = inst.g.edges[e].v;
    bool uh = u == rh || u == bh, vh = v == rh || v == bh;
    if (uh && vh) {
      out.between.push_back(e);
      continue;
    }
    if (!uh && !vh) throw StructuralError("flow solver: added edge misses both hubs");
    Vertex hub = uh ? u : v, tgt = uh ? v : u;
    if (added.count(tgt)) throw StructuralError("flow solver: target is not a fixed vertex");
    auto& m = hub == rh ? out.r : out.b;
    if (!m.emplace(tgt, e).second) throw StructuralError("flow solver: parallel added edges");
  }
  return out;
}

// cells whose boundary carries v; empty means v is bare and settles anywhere
std::set<int> vertex_cells(const Drawing& g, const Cells& cells, Vertex v) {
  std::set<int> out;
  for (DartId d : g.nodes[g.node_of(v)].rot) out.insert(cells.cell_of(d));
  return out;
}

// crossing capacity between a hub cell and each other colored cell, one unit
// per edge, plus the concrete exits: entered cell -> edge -> its dart on the
// hub side.  Edges between two hub cells are skipped: any target they could
// reach is already on a hub cell's boundary.
struct CrossAccess {
  std::map<std::pair<int, int>, int> caps;       // (hub cell, entered cell)
  std::map<int, std::map<EdgeId, DartId>> menu;  // entered cell -> exits
};

CrossAccess cross_access(const Drawing& g, const Cells& cells, const std::set<int>& hub_cells,
                         const std::set<int>& colored, const PlacementRules& rules) {
  CrossAccess out;
  for (EdgeId f = 0; f < static_cast<EdgeId>(g.edges.size()); ++f) {
    if (!g.drawn[f] || g.pseudo_edge[f]) continue;
    if (g.real_crossings(f) > 0) continue;
    if (rules.mode == Mode::Strict && !g.chain[f].empty()) continue;
    std::set<std::pair<int, int>> pairs;
    std::map<std::pair<int, int>, DartId> side;
    for (int s = 0; s < g.segments(f); ++s) {
      DartId sd = g.seg_dart(f, s, true);
      if (g.uncrossable.count(sd)) continue;
      int c1 = cells.cell_of(sd), c2 = cells.cell_of(g.darts[sd].twin);
      if (c1 == c2) continue;  // a bridge, crossing it leads back
      for (auto [h, o] : {std::pair{c1, c2}, std::pair{c2, c1}}) {
        if (!hub_cells.count(h) || hub_cells.count(o) || !colored.count(o)) continue;
        DartId hs = h == c1 ? sd : g.darts[sd].twin;
        if (rules.crossable && !rules.crossable(g, hs)) continue;
        pairs.insert({h, o});
        side.emplace(std::pair{h, o}, hs);
      }
    }
    if (pairs.empty()) continue;
    // a single unit of capacity cannot back two arcs at once
    if (pairs.size() > 1)
      throw StructuralError("flow solver: split edge borders two colored cell pairs");
    auto [h, o] = *pairs.begin();
    out.caps[{h, o}] += 1;
    out.menu[o].emplace(f, side.at({h, o}));
  }
  return out;
}

FlowNetwork build_one(const Drawing& g, const Cells& cells, const HubSpec& hub, FaceColor mine,
                      const FaceColoring& lambda, const std::map<Vertex, EdgeId>& targets,
                      const PlacementRules& rules) {
  FlowNetwork net;
  net.adj.resize(2);
  net.demand = static_cast<int>(targets.size());
  if (hub.hub == -1) return net;
  net.hub_cells = hub.cells;

  std::set<int> colored;
  for (auto [c, col] : lambda.color)
    if (col == mine) {
      colored.insert(c);
      net.face_node[c] = net.add_node();
    }
  for (int c : hub.cells)
    if (!colored.count(c)) throw StructuralError("flow solver: hub cell not opened for its color");

  for (auto [v, e] : targets) net.target_node[v] = net.add_node();
  for (auto [v, n] : net.target_node) {
    net.add_arc(n, net.t, 1);
    std::set<int> on = vertex_cells(g, cells, v);
    for (auto [c, fn] : net.face_node)
      if (on.empty() || on.count(c)) net.add_arc(fn, n, 1);
  }
  for (int c : hub.cells) net.add_arc(net.s, net.face_node.at(c), kInf);

  const std::set<int> hubset(hub.cells.begin(), hub.cells.end());
  for (auto [pair, cap] : cross_access(g, cells, hubset, colored, rules).caps)
    net.add_arc(net.face_node.at(pair.first), net.face_node.at(pair.second), cap);
  return net;
}

// how one added edge travels: inside the hub's own cells, or across one
// boundary edge into `entered`
struct Route {
  Vertex hub = -1;
  bool direct = false;
  int entered = -1;
};

bool extract_routes(FlowNetwork& net, const std::map<Vertex, EdgeId>& targets, Vertex hub,
                    std::map<EdgeId, Route>& out) {
  if (max_flow(net) != net.demand) return false;
  std::map<int, int> cell_of_node;
  for (auto [c, n] : net.face_node) cell_of_node[n] = c;
  const std::set<int> hubset(net.hub_cells.begin(), net.hub_cells.end());
  for (auto [v, e] : targets) {
    int tn = net.target_node.at(v);
    int from = -1;
    for (int ai : net.adj[tn]) {
      if (net.arcs[ai].cap > 0) continue;  // the outbound sink arc
      if (net.arcs[ai ^ 1].flow == 1) {
        from = net.arcs[ai ^ 1].from;
        break;
      }
    }
    if (from == -1) throw StructuralError("flow solver: saturated target without a feeding cell");
    int cell = cell_of_node.at(from);
    out[e] = {hub, hubset.count(cell) > 0, hubset.count(cell) ? -1 : cell};
  }
  return true;
}

// the cell a crossing-free placement lives in
int placement_cell(const Drawing& g, const Cells& cells, const EdgePlacement& p) {
  if (p.cu.at != -1) return cells.cell_of_corner(p.cu);
  if (p.cv.at != -1) return cells.cell_of_corner(p.cv);
  return p.host ? cells.cell_of(*p.host) : cells.outer_cell();
}

struct HubRealize {
  std::map<int, std::map<EdgeId, DartId>> menu;  // entered cell -> edge -> hub-side dart
  std::vector<DartId> cell_refs;                 // stable dart naming each hub cell
};

// Replay the routes as placements.  Candidate exits per crossing route are
// the menu edges into the entered cell; a crossing route may also fall back
// to a crossing-free placement (always color-consistent, and its personal
// cell-to-target unit is free), which covers exits blocked because the
// target is an endpoint of every remaining menu edge.  Backtracking settles
// which exits nest.
std::optional<Solution> realize(const Instance& inst, const std::vector<EdgeId>& order,
                                const std::map<EdgeId, Route>& routes,
                                const std::map<Vertex, HubRealize>& hubs,
                                const PlacementRules& rules) {
  std::vector<PlaceStep> steps;
  std::optional<Solution> found;
  std::function<bool(const Drawing&, size_t)> go = [&](const Drawing& g, size_t i) -> bool {
    if (i == order.size()) {
      if (!validate_one_planar(g, rules.mode).ok()) return false;
      found = Solution{g, steps};
      return true;
    }
    EdgeId e = order[i];
    const Route& rt = routes.at(e);
    const HubRealize& hub = hubs.at(rt.hub);
    const bool hub_is_u = inst.g.edges[e].u == rt.hub;
    Cells cells(g);
    const bool anchored = !g.dartless(g.node_of(rt.hub));
    std::set<int> open;  // cells the unanchored hub may settle in
    if (!anchored)
      for (DartId ref : hub.cell_refs)
        open.insert(ref == -1 ? cells.outer_cell() : cells.cell_of(ref));

    std::vector<EdgePlacement> cand, fallback;
    for (EdgePlacement& p : enumerate_placements(g, e, rules)) {
      if (p.crossings.empty()) {
        if (!anchored && !open.count(placement_cell(g, cells, p))) continue;
        (rt.direct ? cand : fallback).push_back(std::move(p));
      } else if (!rt.direct && p.crossings.size() == 1) {
        auto mit = hub.menu.find(rt.entered);
        if (mit == hub.menu.end()) continue;
        DartId side = p.crossings[0].side;
        auto eit = mit->second.find(g.darts[side].edge);
        if (eit == mit->second.end()) continue;
        // the crossing is entered from the u leg's cell
        DartId expect = hub_is_u ? eit->second : g.darts[eit->second].twin;
        if (side != expect) continue;
        cand.push_back(std::move(p));
      }
    }
    cand.insert(cand.end(), std::make_move_iterator(fallback.begin()),
                std::make_move_iterator(fallback.end()));
    for (const EdgePlacement& p : cand) {
      Drawing next = g;
      next.place_edge(p);
      steps.push_back(to_portable(g, p));
      if (go(next, i + 1)) return true;
      steps.pop_back();
    }
    return false;
  };
  go(inst.g, 0);
  return found;
}

DartId cell_ref(const Cells& cells, int c) {
  if (cells.count() == 0) return -1;
  if (c < 0 || c >= cells.count()) throw StructuralError("flow solver: bad hub cell");
  const std::vector<int>& obs = cells.orbits_in_cell(c);
  return obs.empty() ? -1 : cells.orbit(obs[0])[0];
}

}  // namespace

int FlowNetwork::add_node() {
  adj.emplace_back();
  return node_count() - 1;
}

int FlowNetwork::add_arc(int from, int to, int cap) {
  int i = static_cast<int>(arcs.size());
  arcs.push_back({from, to, cap, 0});
  arcs.push_back({to, from, 0, 0});
  adj[from].push_back(i);
  adj[to].push_back(i + 1);
  return i;
}

int max_flow(FlowNetwork& net) {
  int total = 0;
  for (;;) {
    std::vector<int> via(net.node_count(), -1);  // arc that reached the node
    via[net.s] = -2;
    std::deque<int> q{net.s};
    while (!q.empty() && via[net.t] == -1) {
      int u = q.front();
      q.pop_front();
      for (int ai : net.adj[u]) {
        const FlowNetwork::Arc& a = net.arcs[ai];
        if (a.cap - a.flow <= 0 || via[a.to] != -1) continue;
        via[a.to] = ai;
        q.push_back(a.to);
      }
    }
    if (via[net.t] == -1) return total;
    int push = kInf;
    for (int v = net.t; v != net.s; v = net.arcs[via[v]].from)
      push = std::min(push, net.arcs[via[v]].cap - net.arcs[via[v]].flow);
    for (int v = net.t; v != net.s; v = net.arcs[via[v]].from) {
      net.arcs[via[v]].flow += push;
      net.arcs[via[v] ^ 1].flow -= push;
    }
    total += push;
  }
}

std::vector<int> face_hops(const Drawing& g, const Cells& cells, int from) {
  if (from < 0 || from >= cells.count()) throw StructuralError("face_hops: bad cell");
  std::vector<std::set<int>> nb(cells.count());
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edges.size()); ++e) {
    if (!g.drawn[e] || g.pseudo_edge[e]) continue;
    for (int s = 0; s < g.segments(e); ++s) {
      DartId sd = g.seg_dart(e, s, true);
      int c1 = cells.cell_of(sd), c2 = cells.cell_of(g.darts[sd].twin);
      if (c1 != c2) {
        nb[c1].insert(c2);
        nb[c2].insert(c1);
      }
    }
  }
  std::vector<int> dist(cells.count(), -1);
  dist[from] = 0;
  std::deque<int> q{from};
  while (!q.empty()) {
    int c = q.front();
    q.pop_front();
    for (int d : nb[c])
      if (dist[d] == -1) {
        dist[d] = dist[c] + 1;
        q.push_back(d);
      }
  }
  return dist;
}

std::pair<FlowNetwork, FlowNetwork> build_networks(const Instance& inst, const HubSpec& r,
                                                   const HubSpec& b, const FaceColoring& lambda,
                                                   const PlacementRules& rules) {
  const HubEdgeSets se = classify(inst, r.hub, b.hub);
  if (!se.between.empty())
    throw StructuralError("flow solver: an edge between the hubs must be drawn first");
  Cells cells(inst.g);
  return {build_one(inst.g, cells, r, FaceColor::R, lambda, se.r, rules),
          build_one(inst.g, cells, b, FaceColor::B, lambda, se.b, rules)};
}

std::optional<Solution> solve_lambda(const Instance& inst, const HubSpec& r, const HubSpec& b,
                                     const FaceColoring& lambda, const PlacementRules& rules) {
  if (inst.ic) throw StructuralError("flow solver: restricted regime is handled elsewhere");
  const HubEdgeSets se = classify(inst, r.hub, b.hub);
  if (!se.between.empty())
    throw StructuralError("flow solver: an edge between the hubs must be drawn first");
  Cells cells(inst.g);

  // a bare vertex both hubs require would have to settle in a cell of each
  // color at once
  for (auto [v, e] : se.r)
    if (se.b.count(v) && inst.g.dartless(inst.g.node_of(v))) return std::nullopt;

  std::map<EdgeId, Route> routes;
  {
    auto [n1, n2] = build_networks(inst, r, b, lambda, rules);
    if (!extract_routes(n1, se.r, r.hub, routes)) return std::nullopt;
    if (!extract_routes(n2, se.b, b.hub, routes)) return std::nullopt;
  }

  std::map<Vertex, HubRealize> hubs;
  for (auto [hub, mine] : {std::pair{&r, FaceColor::R}, std::pair{&b, FaceColor::B}}) {
    if (hub->hub == -1) continue;
    std::set<int> colored;
    for (auto [c, col] : lambda.color)
      if (col == mine) colored.insert(c);
    const std::set<int> hubset(hub->cells.begin(), hub->cells.end());
    HubRealize hr;
    hr.menu = cross_access(inst.g, cells, hubset, colored, rules).menu;
    for (int c : hub->cells) hr.cell_refs.push_back(cell_ref(cells, c));
    hubs.emplace(hub->hub, std::move(hr));
  }
  return realize(inst, inst.add_edges, routes, hubs, rules);
}

std::optional<Solution> solve_single_vertex(const Instance& inst) {
  if (inst.ic) throw StructuralError("single-vertex solver: restricted regime is handled elsewhere");
  if (inst.add_vertices.size() != 1)
    throw StructuralError("single-vertex solver: expected exactly one vertex to place");
  const Vertex hub = inst.add_vertices[0];
  Cells cells(inst.g);
  std::vector<int> cs;
  if (cells.count() == 0)
    cs.push_back(-1);  // dartless fixed part: the one unbounded cell
  else
    for (int c = 0; c < cells.count(); ++c) cs.push_back(c);
  FaceColoring lam;
  for (int c : cs) lam.color[c] = FaceColor::R;
  for (int c : cs)
    if (auto sol = solve_lambda(inst, {hub, {c}}, {}, lam)) return sol;
  return std::nullopt;
}

FarResult solve_far_two_vertices(const Instance& inst, int cell_r, int cell_b) {
  if (inst.ic) throw StructuralError("far solver: restricted regime is handled elsewhere");
  if (inst.add_vertices.size() != 2)
    throw StructuralError("far solver: expected exactly two vertices to place");
  const Vertex rv = inst.add_vertices[0], bv = inst.add_vertices[1];
  Cells cells(inst.g);
  const std::vector<int> hr = face_hops(inst.g, cells, cell_r);
  const std::vector<int> hb = face_hops(inst.g, cells, cell_b);
  if (hr[cell_b] != -1 && hr[cell_b] < 3) return {};

  FarResult out;
  out.applicable = true;
  const HubEdgeSets se = classify(inst, rv, bv);
  if (!se.between.empty()) return out;  // the hubs' own edge would need two crossings

  FaceColoring lam;
  for (int c = 0; c < cells.count(); ++c) {
    bool nr = hr[c] != -1 && hr[c] <= 1, nb = hb[c] != -1 && hb[c] <= 1;
    if (nr && nb) throw StructuralError("far solver: a cell within one hop of both hubs");
    if (nr) lam.color[c] = FaceColor::R;
    if (nb) lam.color[c] = FaceColor::B;
  }
  out.sol = solve_lambda(inst, {rv, {cell_r}}, {bv, {cell_b}}, lam);
  return out;
}

}  // namespace planext
