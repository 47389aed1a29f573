#include "planext/embedding_graph.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "planext/validate.hpp"

namespace planext {

namespace {

int add_eg_node(EmbeddingGraph& eg, EmbeddingGraph::Node n) {
  eg.nodes.push_back(n);
  eg.adj.emplace_back();
  eg.shadow_next.push_back(-1);
  return eg.size() - 1;
}

void link(EmbeddingGraph& eg, int a, int b) {
  eg.adj[a].push_back(b);
  eg.adj[b].push_back(a);
}

}  // namespace

EmbeddingGraph build_embedding_graph(const Drawing& g, const std::vector<Vertex>& marked) {
  EmbeddingGraph eg;
  std::set<Vertex> mk(marked.begin(), marked.end());

  for (NodeId n = 0; n < static_cast<NodeId>(g.nodes.size()); ++n) {
    if (g.dartless(n)) continue;
    EmbeddingGraph::Node en;
    if (g.nodes[n].kind == NodeKind::Real) {
      en.role = EgRole::Original;
      en.marked = mk.count(g.nodes[n].v) > 0;
    } else {
      en.role = EgRole::CrossingVertex;
    }
    en.source = n;
    eg.of_node[n] = add_eg_node(eg, en);
  }

  // the subdivided planarization skeleton
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edges.size()); ++e) {
    if (!g.drawn[e]) continue;
    if (!g.crossed(e)) {
      EmbeddingGraph::Node en;
      en.role = EgRole::EdgeVertex;
      en.edge = e;
      int ve = add_eg_node(eg, en);
      eg.of_edge[e] = ve;
      link(eg, ve, eg.of_node.at(g.node_of(g.edges[e].u)));
      link(eg, ve, eg.of_node.at(g.node_of(g.edges[e].v)));
    } else {
      for (int s = 0; s < g.segments(e); ++s)
        link(eg, eg.of_node.at(g.chain_point(e, s)), eg.of_node.at(g.chain_point(e, s + 1)));
    }
  }

  if (g.outer == -1) return eg;

  Cells cells(g);
  for (int c = 0; c < cells.count(); ++c) {
    EmbeddingGraph::Node fn;
    fn.role = EgRole::FaceVertex;
    fn.cell = c;
    int fc = add_eg_node(eg, fn);
    eg.of_cell[c] = fc;

    // one boundary walk per orbit: every dart shows us its origin, and
    // walking along an uncrossed edge also shows us the subdivision point
    for (int ob : cells.orbits_in_cell(c)) {
      std::vector<int> shadows;
      auto shadow_of = [&](int target, DartId seen_from) {
        EmbeddingGraph::Node sn;
        sn.role = EgRole::Shadow;
        sn.cell = c;
        sn.of = target;
        sn.seen_from = seen_from;
        int s = add_eg_node(eg, sn);
        link(eg, s, target);
        link(eg, s, fc);
        shadows.push_back(s);
      };
      for (DartId d : cells.orbit(ob)) {
        shadow_of(eg.of_node.at(g.darts[d].origin), d);
        if (!g.crossed(g.darts[d].edge)) shadow_of(eg.of_edge.at(g.darts[d].edge), d);
      }
      size_t len = shadows.size();
      for (size_t i = 0; i < len; ++i) eg.shadow_next[shadows[i]] = shadows[(i + 1) % len];
      if (len == 2) {
        link(eg, shadows[0], shadows[1]);
      } else if (len > 2) {
        for (size_t i = 0; i < len; ++i) link(eg, shadows[i], eg.shadow_next[shadows[i]]);
      }
    }
  }
  return eg;
}

std::vector<int> eg_distances(const EmbeddingGraph& eg, const std::vector<int>& sources) {
  std::vector<int> dist(eg.size(), -1);
  std::queue<int> q;
  for (int s : sources) {
    if (dist[s] == 0) continue;
    dist[s] = 0;
    q.push(s);
  }
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int w : eg.adj[u])
      if (dist[w] == -1) {
        dist[w] = dist[u] + 1;
        q.push(w);
      }
  }
  return dist;
}

std::vector<Vertex> attachment_set(const Instance& inst) {
  std::set<Vertex> added(inst.add_vertices.begin(), inst.add_vertices.end());
  std::set<Vertex> out;
  for (EdgeId e : inst.add_edges) {
    for (Vertex v : {inst.g.edges[e].u, inst.g.edges[e].v})
      if (!added.count(v)) out.insert(v);
  }
  return {out.begin(), out.end()};
}

int deletion_parameter(const Instance& inst, bool ic) {
  if (!ic) return static_cast<int>(inst.add_edges.size());
  std::set<Vertex> added(inst.add_vertices.begin(), inst.add_vertices.end());
  int between_fixed = 0;
  for (EdgeId e : inst.add_edges)
    if (!added.count(inst.g.edges[e].u) && !added.count(inst.g.edges[e].v)) ++between_fixed;
  return static_cast<int>(inst.add_vertices.size()) + between_fixed;
}

PruneOutcome prune(const Instance& inst, bool ic) {
  const Drawing& g = inst.g;
  std::set<Vertex> added(inst.add_vertices.begin(), inst.add_vertices.end());

  int fixed_count = 0;
  bool bare_fixed = false;
  NodeId root = -1;
  for (const auto& [v, n] : g.vnode) {
    if (added.count(v)) continue;
    ++fixed_count;
    if (g.dartless(n)) {
      bare_fixed = true;
      continue;
    }
    if (root == -1)
      root = g.comp.find(n);
    else if (g.comp.find(n) != root)
      throw StructuralError("pruning requires a connected fixed part");
  }
  if (fixed_count > 1 && bare_fixed)
    throw StructuralError("pruning requires a connected fixed part");

  int k = deletion_parameter(inst, ic);
  int threshold = 4 * k + 7;
  std::vector<Vertex> marked = attachment_set(inst);
  std::set<Vertex> mk(marked.begin(), marked.end());

  std::set<Vertex> far;
  std::vector<char> cut_e(g.edges.size(), 0);
  if (root != -1) {
    EmbeddingGraph eg = build_embedding_graph(g, marked);
    std::vector<int> sources;
    for (int i = 0; i < eg.size(); ++i)
      if (eg.nodes[i].marked) sources.push_back(i);
    std::vector<int> dist = eg_distances(eg, sources);
    auto faraway = [&](int en) { return dist[en] == -1 || dist[en] >= threshold; };
    for (const auto& [v, n] : g.vnode)
      if (!added.count(v) && !g.dartless(n) && faraway(eg.of_node.at(n))) far.insert(v);
    for (EdgeId e = 0; e < static_cast<EdgeId>(g.edges.size()); ++e) {
      if (!g.drawn[e]) continue;
      bool cut = far.count(g.edges[e].u) || far.count(g.edges[e].v);
      if (!cut && !g.crossed(e)) cut = faraway(eg.of_edge.at(e));
      for (int s = 1; !cut && s < g.segments(e); ++s)
        cut = faraway(eg.of_node.at(g.chain_point(e, s)));
      cut_e[e] = cut;
    }
  } else {
    // nothing drawn: every fixed vertex away from the attachment set goes
    for (const auto& [v, n] : g.vnode)
      if (!added.count(v) && !mk.count(v)) far.insert(v);
  }

  // components of the cut graph; vertex ids are arbitrary, so index them
  std::vector<Vertex> verts;
  for (const auto& [v, n] : g.vnode)
    if (!far.count(v)) verts.push_back(v);
  std::map<Vertex, int> idx;
  for (size_t i = 0; i < verts.size(); ++i) idx[verts[i]] = static_cast<int>(i);
  Dsu hpart(static_cast<int>(verts.size()));
  Dsu gpart(static_cast<int>(verts.size()));

  std::vector<char> keep_h(g.edges.size(), 0);
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edges.size()); ++e) {
    if (!g.drawn[e] || cut_e[e]) continue;
    keep_h[e] = 1;
    hpart.unite(idx.at(g.edges[e].u), idx.at(g.edges[e].v));
    gpart.unite(idx.at(g.edges[e].u), idx.at(g.edges[e].v));
  }
  for (EdgeId e : inst.add_edges) {
    if (far.count(g.edges[e].u) || far.count(g.edges[e].v))
      throw StructuralError("pruning cut an attachment vertex");
    gpart.unite(idx.at(g.edges[e].u), idx.at(g.edges[e].v));
  }

  PruneOutcome out;
  // two fixed components inside one component of the cut graph certify NO
  std::map<int, std::set<int>> fixed_parts_of;
  for (Vertex v : verts) {
    if (added.count(v)) continue;
    fixed_parts_of[gpart.find(idx.at(v))].insert(hpart.find(idx.at(v)));
  }
  for (const auto& [gr, hs] : fixed_parts_of)
    if (hs.size() > 1) {
      out.certified_no = true;
      return out;
    }

  std::map<int, std::vector<EdgeId>> part_add, part_kept;
  for (EdgeId e : inst.add_edges) part_add[gpart.find(idx.at(g.edges[e].u))].push_back(e);
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edges.size()); ++e)
    if (keep_h[e]) part_kept[gpart.find(idx.at(g.edges[e].u))].push_back(e);

  std::map<int, Vertex> order;  // component -> smallest member vertex
  for (Vertex v : verts) {
    int r = gpart.find(idx.at(v));
    if (!order.count(r) || v < order[r]) order[r] = v;
  }
  std::vector<int> roots;
  for (const auto& [r, v] : order) roots.push_back(r);
  std::sort(roots.begin(), roots.end(), [&](int a, int b) { return order[a] < order[b]; });

  for (int r : roots) {
    if (part_add[r].empty() && part_kept[r].empty()) continue;  // a lone vertex
    Instance part;
    std::vector<char> keep(g.edges.size(), 0);
    for (EdgeId e : part_kept[r]) keep[e] = 1;
    part.g = restrict_drawing(g, keep);
    part.add_edges = part_add[r];
    for (Vertex v : verts)
      if (added.count(v) && gpart.find(idx.at(v)) == r) part.add_vertices.push_back(v);
    part.ic = inst.ic;
    part.pruned_k = k;
    out.parts.push_back(std::move(part));
  }
  return out;
}

namespace {

// anchors recorded against a part's restricted drawing: corner darts sit at
// real endpoints, so their segment is re-derived; crossing and host darts may
// land on any piece of a re-split edge, so those branch
struct ElasticReplay {
  std::vector<PlaceStep> steps;
  bool ic = false;
  std::optional<Drawing> done;

  // the recorded wedge first; foreign darts may have split it, so every
  // other wedge at the vertex follows
  static std::vector<Corner> corner_candidates(const Drawing& g, const PortableCorner& pc) {
    NodeId n = g.node_of(pc.node);
    if (!pc.at) return {Corner{n, -1}};
    std::vector<Corner> out;
    EdgeId e = pc.at->edge;
    DartId first = -1;
    if (g.drawn[e]) {
      if (g.edges[e].u == pc.node) first = g.seg_dart(e, 0, true);
      else if (g.edges[e].v == pc.node) first = g.seg_dart(e, g.segments(e) - 1, false);
    }
    if (first != -1) out.push_back({n, first});
    for (DartId d : g.nodes[n].rot)
      if (d != first) out.push_back({n, d});
    return out;
  }

  static std::vector<DartId> candidates(const Drawing& g, const PortableDart& pd) {
    std::vector<DartId> out;
    int segs = g.segments(pd.edge);
    if (pd.seg < segs) out.push_back(g.seg_dart(pd.edge, pd.seg, pd.from_u));
    for (int s = 0; s < segs; ++s)
      if (s != pd.seg) out.push_back(g.seg_dart(pd.edge, s, pd.from_u));
    return out;
  }

  void dfs(const Drawing& g, size_t i) {
    if (done) return;
    if (i == steps.size()) {
      // replay is mechanical, so dead combinations (a second crossing on a
      // fringe edge, a torus fold) are caught here and searched past
      if ((ic ? validate_ic(g) : validate_one_planar(g)).ok()) done = g;
      return;
    }
    const PlaceStep& s = steps[i];
    EdgePlacement p;
    p.e = s.edge;
    for (const PortableSide& ps : s.sides)
      p.sides.push_back({ps.anchor == -1 ? -1 : g.node_of(ps.anchor), ps.hop, ps.left});

    std::vector<std::vector<DartId>> slots;
    for (const PortableDart& pd : s.crossings) {
      // an already crossed or adjacent edge can never legally host a crossing
      if (g.crossed(pd.edge)) return;
      if (g.edges[pd.edge].u == g.edges[s.edge].u || g.edges[pd.edge].u == g.edges[s.edge].v ||
          g.edges[pd.edge].v == g.edges[s.edge].u || g.edges[pd.edge].v == g.edges[s.edge].v)
        return;
      slots.push_back(candidates(g, pd));
    }
    if (s.host) slots.push_back(candidates(g, *s.host));

    for (const Corner& cu : corner_candidates(g, s.cu)) {
      for (const Corner& cv : corner_candidates(g, s.cv)) {
        p.cu = cu;
        p.cv = cv;
        std::vector<size_t> pick(slots.size(), 0);
        for (;;) {
          p.crossings.clear();
          for (size_t j = 0; j < s.crossings.size(); ++j)
            p.crossings.push_back({slots[j][pick[j]]});
          if (s.host) p.host = slots.back()[pick.back()];
          Drawing g2 = g;
          bool placed = true;
          try {
            g2.place_edge(p, true);
          } catch (const PlacementError&) {
            placed = false;
          }
          if (placed) {
            dfs(g2, i + 1);
            if (done) return;
          }
          size_t j = 0;
          while (j < slots.size() && ++pick[j] == slots[j].size()) pick[j++] = 0;
          if (j == slots.size()) break;
        }
      }
    }
  }
};

}  // namespace

namespace {

std::optional<Drawing> try_recombine(const Instance& original, const std::vector<Solution>& parts) {
  ElasticReplay rep;
  rep.ic = original.ic;
  for (const Solution& s : parts) rep.steps.insert(rep.steps.end(), s.steps.begin(), s.steps.end());
  rep.dfs(original.g, 0);
  return rep.done;
}

}  // namespace

Drawing recombine(const Instance& original, const std::vector<Solution>& parts) {
  std::optional<Drawing> out = try_recombine(original, parts);
  if (!out) throw StructuralError("recombination lost an anchor");
  return *out;
}

Drawing recombine_any(const Instance& original, const std::vector<std::vector<Solution>>& choices) {
  for (const auto& c : choices)
    if (c.empty()) throw StructuralError("recombination over a part with no solutions");
  std::vector<size_t> pick(choices.size(), 0);
  for (;;) {
    std::vector<Solution> tuple;
    for (size_t i = 0; i < choices.size(); ++i) tuple.push_back(choices[i][pick[i]]);
    std::optional<Drawing> out = try_recombine(original, tuple);
    if (out) return *out;
    size_t i = 0;
    while (i < pick.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
    if (i == pick.size()) throw StructuralError("no solution combination recombines");
  }
}

int radius_check(const EmbeddingGraph& eg, const Instance& pruned_part) {
  if (!pruned_part.pruned_k) return -1;
  std::vector<int> sources;
  for (int i = 0; i < eg.size(); ++i)
    if (eg.nodes[i].marked) sources.push_back(i);
  if (sources.empty()) return -1;  // no attachments here: the bound says nothing
  std::vector<int> dist = eg_distances(eg, sources);
  int ecc = 0;
  for (int i = 0; i < eg.size(); ++i)
    if (eg.nodes[i].role == EgRole::FaceVertex) ecc = std::max(ecc, dist[i]);
  if (ecc > 4 * *pruned_part.pruned_k + 8)
    throw StructuralError("pruned part exceeds its radius bound");
  return ecc;
}

}  // namespace planext
