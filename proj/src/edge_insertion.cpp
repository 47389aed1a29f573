#include "planext/edge_insertion.hpp"

#include <algorithm>
#include <functional>

#include "planext/embedding_graph.hpp"
#include "planext/oracle.hpp"
#include "planext/validate.hpp"

namespace planext {

namespace {

int capped_inter(const std::set<EdgeId>& a, const std::set<EdgeId>& b, int k) {
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& big = a.size() <= b.size() ? b : a;
  int c = 0;
  for (EdgeId e : small)
    if (big.count(e) && ++c > k) return k + 1;
  return c;
}

PartitionProfile::Walk build_walk(const Drawing& g, const std::vector<DartId>& orbit,
                                  const std::set<Vertex>& xs) {
  PartitionProfile::Walk w;
  std::vector<int> pos;
  const int len = static_cast<int>(orbit.size());
  for (int i = 0; i < len; ++i) {
    const MapNode& nd = g.nodes[g.darts[orbit[i]].origin];
    if (nd.kind == NodeKind::Real && xs.count(nd.v)) {
      w.occ.push_back(nd.v);
      pos.push_back(i);
    }
  }
  const int n = static_cast<int>(pos.size());
  for (int i = 0; i < n; ++i) {
    BoundarySegment s;
    s.x1 = w.occ[i];
    s.x2 = w.occ[(i + 1) % n];
    // darts from this occurrence up to, not including, the next one; a single
    // occurrence owns the whole walk
    const int span = n == 1 ? len : (pos[(i + 1) % n] - pos[i] + len) % len;
    for (int j = 0; j < span; ++j) {
      EdgeId e = g.darts[orbit[(pos[i] + j) % len]].edge;
      if (!g.crossed(e) && !g.pseudo_edge[e]) s.b.insert(e);
    }
    w.seg.push_back(std::move(s));
  }
  return w;
}

PartitionProfile::Cell build_cell(const Drawing& g, const Cells& cells, int cell,
                                  const std::set<Vertex>& xs) {
  PartitionProfile::Cell c;
  for (int orb : cells.orbits_in_cell(cell)) {
    c.walks.push_back(build_walk(g, cells.orbit(orb), xs));
    for (Vertex x : c.walks.back().occ) c.xs.insert(x);
  }
  return c;
}

void fill_addrs(const PartitionProfile& p, std::vector<SegAddr>& addrs) {
  for (const auto& [cid, cell] : p.cells)
    for (int wi = 0; wi < static_cast<int>(cell.walks.size()); ++wi)
      for (int si = 0; si < static_cast<int>(cell.walks[wi].seg.size()); ++si)
        addrs.push_back({cid, wi, si});
}

const std::set<EdgeId>& seg_of(const PartitionProfile& p, const SegAddr& a) {
  return p.cells.at(a.cell).walks[a.walk].seg[a.idx].b;
}

int pair_count(const PartitionProfile& p, SegAddr a, SegAddr b) {
  if (b < a) std::swap(a, b);
  return p.counts.at({a, b});
}

struct CellSig {
  std::set<Vertex> xs;
  std::multiset<int> lens;   // occurrence counts of occupied walks
  std::multiset<int> inner;  // within-cell pair counts, self pairs included
  auto operator<=>(const CellSig&) const = default;
};

CellSig cell_sig(const PartitionProfile& p, int cid) {
  const auto& cell = p.cells.at(cid);
  CellSig s;
  s.xs = cell.xs;
  std::vector<SegAddr> addrs;
  for (int wi = 0; wi < static_cast<int>(cell.walks.size()); ++wi) {
    const int n = static_cast<int>(cell.walks[wi].occ.size());
    if (n == 0) continue;
    s.lens.insert(n);
    for (int si = 0; si < n; ++si) addrs.push_back({cid, wi, si});
  }
  for (size_t i = 0; i < addrs.size(); ++i)
    for (size_t j = i; j < addrs.size(); ++j) s.inner.insert(pair_count(p, addrs[i], addrs[j]));
  return s;
}

// rotations r aligning b-walk labels onto a-walk labels; flipped alignment
// runs the b-walk backwards
std::vector<int> valid_rotations(const std::vector<Vertex>& ao, const std::vector<Vertex>& bo,
                                 bool flip) {
  const int n = static_cast<int>(ao.size());
  std::vector<int> rs;
  for (int r = 0; r < n; ++r) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      const int bi = flip ? ((r - i) % n + n) % n : (r + i) % n;
      ok = ao[i] == bo[bi];
    }
    if (ok) rs.push_back(r);
  }
  return rs;
}

// gap i of the a-walk lands on this gap of the aligned b-walk; a flipped
// alignment reverses each gap, pairing occ[i] -> occ[i+1] with the b-walk gap
// that runs the other way
int seg_image(int i, int r, int n, bool flip) {
  return flip ? ((r - i - 1) % n + 2 * n) % n : (r + i) % n;
}

// every alignment of B's occupied walks onto A's (walk bijection, per-walk
// rotation, one orientation flip shared by the whole cell), fed to `then` as
// a segment correspondence until one continuation succeeds
bool align_cells(const PartitionProfile& a, const PartitionProfile& b, int A, int B,
                 const std::function<bool(const std::vector<std::pair<SegAddr, SegAddr>>&)>& then) {
  const auto& ca = a.cells.at(A);
  const auto& cb = b.cells.at(B);
  std::vector<int> wa, wb;
  for (int i = 0; i < static_cast<int>(ca.walks.size()); ++i)
    if (!ca.walks[i].occ.empty()) wa.push_back(i);
  for (int i = 0; i < static_cast<int>(cb.walks.size()); ++i)
    if (!cb.walks[i].occ.empty()) wb.push_back(i);
  if (wa.size() != wb.size()) return false;
  std::vector<char> used(wb.size(), 0);
  std::vector<std::pair<SegAddr, SegAddr>> m;
  std::function<bool(size_t, bool)> rec = [&](size_t i, bool flip) -> bool {
    if (i == wa.size()) return then(m);
    const auto& ow = ca.walks[wa[i]];
    const int n = static_cast<int>(ow.occ.size());
    for (size_t j = 0; j < wb.size(); ++j) {
      if (used[j]) continue;
      const auto& tw = cb.walks[wb[j]];
      if (static_cast<int>(tw.occ.size()) != n) continue;
      for (int r : valid_rotations(ow.occ, tw.occ, flip)) {
        used[j] = 1;
        const size_t base = m.size();
        for (int s = 0; s < n; ++s)
          m.push_back({SegAddr{A, wa[i], s}, SegAddr{B, wb[j], seg_image(s, r, n, flip)}});
        if (rec(i + 1, flip)) return true;
        m.resize(base);
        used[j] = 0;
      }
    }
    return false;
  };
  return rec(0, false) || rec(0, true);
}

}  // namespace

PartitionProfile compute_profile(const Drawing& g, const std::vector<Vertex>& X, int k) {
  PartitionProfile p;
  p.k = k;
  p.xs.insert(X.begin(), X.end());
  Cells cells(g);
  for (int c = 0; c < cells.count(); ++c) p.cells.emplace(c, build_cell(g, cells, c, p.xs));
  std::vector<SegAddr> addrs;
  fill_addrs(p, addrs);
  for (size_t i = 0; i < addrs.size(); ++i)
    for (size_t j = i; j < addrs.size(); ++j)
      p.counts[{addrs[i], addrs[j]}] = capped_inter(seg_of(p, addrs[i]), seg_of(p, addrs[j]), k);
  return p;
}

PartitionProfile apply_placement(const PartitionProfile& prof, const Drawing& before,
                                 const EdgePlacement& p, const Drawing& after) {
  Cells cb(before), ca(after);

  // cells the curve runs through; every boundary change is confined to them,
  // because a crossing rewrites exactly the crossed edge's two side cells and
  // an endpoint rewrites the wedge's cell
  std::set<int> touched;
  auto touch_corner = [&](const Corner& c) {
    const int cell = cb.cell_of_corner(c);
    if (cell >= 0) touched.insert(cell);
  };
  touch_corner(p.cu);
  touch_corner(p.cv);
  for (const CrossSpec& cs : p.crossings) {
    touched.insert(cb.cell_of(cs.side));
    touched.insert(cb.cell_of(before.darts[cs.side].twin));
  }
  if (p.host) {
    touched.insert(cb.cell_of(*p.host));
  } else if (p.cu.at < 0 && p.cv.at < 0 && p.crossings.empty() && cb.outer_cell() >= 0) {
    touched.insert(cb.outer_cell());  // a hostless float lands in the outer cell
  }

  PartitionProfile out;
  out.k = prof.k;
  out.xs = prof.xs;

  std::map<int, int> old_size;
  for (int o = 0; o < cb.orbit_count(); ++o)
    old_size[cb.cell_of_orbit(o)] += static_cast<int>(cb.orbit(o).size());

  std::map<int, int> back;  // after cell -> before cell, carried cells only
  const DartId nbefore = static_cast<DartId>(before.darts.size());
  for (int c = 0; c < ca.count(); ++c) {
    int c0 = -1;
    bool carried = true;
    int total = 0;
    for (int orb : ca.orbits_in_cell(c)) {
      for (DartId d : ca.orbit(orb)) {
        ++total;
        if (d >= nbefore) {
          carried = false;
          break;
        }
        const int bc = cb.cell_of(d);
        if (c0 < 0) c0 = bc;
        else if (bc != c0) carried = false;
        if (!carried) break;
      }
      if (!carried) break;
    }
    // identical dart set of an untouched cell: the walks are reusable as is,
    // deterministic orbit traversal keeps their order and starting darts
    carried = carried && c0 >= 0 && !touched.count(c0) && old_size.at(c0) == total;
    if (carried) {
      out.cells.emplace(c, prof.cells.at(c0));
      back.emplace(c, c0);
    } else {
      out.cells.emplace(c, build_cell(after, ca, c, out.xs));
    }
  }

  std::vector<SegAddr> addrs;
  fill_addrs(out, addrs);
  for (size_t i = 0; i < addrs.size(); ++i)
    for (size_t j = i; j < addrs.size(); ++j) {
      const auto ia = back.find(addrs[i].cell);
      const auto ib = back.find(addrs[j].cell);
      if (ia != back.end() && ib != back.end()) {
        SegAddr a0{ia->second, addrs[i].walk, addrs[i].idx};
        SegAddr b0{ib->second, addrs[j].walk, addrs[j].idx};
        if (b0 < a0) std::swap(a0, b0);
        out.counts[{addrs[i], addrs[j]}] = prof.counts.at({a0, b0});
      } else {
        out.counts[{addrs[i], addrs[j]}] =
            capped_inter(seg_of(out, addrs[i]), seg_of(out, addrs[j]), out.k);
      }
    }
  return out;
}

bool profiles_equivalent(const PartitionProfile& a, const PartitionProfile& b) {
  if (a.k != b.k || a.xs != b.xs || a.cells.size() != b.cells.size()) return false;

  std::map<CellSig, std::pair<std::vector<int>, std::vector<int>>> groups;
  for (const auto& [cid, cell] : a.cells) groups[cell_sig(a, cid)].first.push_back(cid);
  for (const auto& [cid, cell] : b.cells) groups[cell_sig(b, cid)].second.push_back(cid);
  for (const auto& [sig, pr] : groups)
    if (pr.first.size() != pr.second.size()) return false;

  // only cells carrying segments still need an aligned partner; the rest are
  // settled by the signature tally above
  std::vector<int> order;
  std::map<int, const std::vector<int>*> cands;
  for (const auto& [sig, pr] : groups) {
    if (sig.lens.empty()) continue;
    for (int cid : pr.first) {
      order.push_back(cid);
      cands.emplace(cid, &pr.second);
    }
  }

  std::set<int> taken;               // b-cells already matched
  std::map<SegAddr, SegAddr> sigma;  // segment correspondence so far
  std::function<bool(size_t)> match = [&](size_t idx) -> bool {
    if (idx == order.size()) return true;
    const int A = order[idx];
    for (int B : *cands.at(A)) {
      if (taken.count(B)) continue;
      const bool ok =
          align_cells(a, b, A, B, [&](const std::vector<std::pair<SegAddr, SegAddr>>& m) {
            for (const auto& [s, t] : m) {
              for (const auto& [s2, t2] : sigma)
                if (pair_count(a, s, s2) != pair_count(b, t, t2)) return false;
              for (const auto& [s2, t2] : m)
                if (pair_count(a, s, s2) != pair_count(b, t, t2)) return false;
            }
            for (const auto& [s, t] : m) sigma.emplace(s, t);
            taken.insert(B);
            if (match(idx + 1)) return true;
            taken.erase(B);
            for (const auto& [s, t] : m) sigma.erase(s);
            return false;
          });
      if (ok) return true;
    }
    return false;
  };
  return match(0);
}

bool equivalent(const Drawing& g, const EdgePlacement& p1, const EdgePlacement& p2,
                const std::vector<Vertex>& X, int k) {
  const PartitionProfile base = compute_profile(g, X, k);
  Drawing g1 = g;
  g1.place_edge(p1);
  Drawing g2 = g;
  g2.place_edge(p2);
  return profiles_equivalent(apply_placement(base, g, p1, g1),
                             apply_placement(base, g, p2, g2));
}

namespace {

// class coordinates, measured on the drawing the placement goes into
void describe(const Drawing& g, const EdgePlacement& p, const std::set<Vertex>& xs,
              int k, InsertionClass& out) {
  Cells cells(g);
  auto orbit_ref = [&](DartId d) -> const std::vector<DartId>& {
    return cells.orbit(cells.orbit_of(d));
  };
  auto index_in = [&](const std::vector<DartId>& orbit, DartId d) {
    for (size_t i = 0; i < orbit.size(); ++i)
      if (orbit[i] == d) return static_cast<int>(i);
    return -1;
  };
  auto is_occ = [&](const std::vector<DartId>& orbit, int q) {
    const MapNode& nd = g.nodes[g.darts[orbit[q]].origin];
    return nd.kind == NodeKind::Real && xs.count(nd.v) > 0;
  };
  // occurrences passed walking counterclockwise from position `from`
  // (exclusive) through `steps` darts
  auto skipped = [&](const std::vector<DartId>& orbit, int from, int steps) {
    const int len = static_cast<int>(orbit.size());
    int c = 0;
    for (int j = 1; j <= steps; ++j)
      if (is_occ(orbit, (from + j) % len)) ++c;
    return c;
  };

  if (p.crossings.empty()) {
    if (p.cu.at < 0 || p.cv.at < 0) return;
    const auto& orbit = orbit_ref(p.cu.at);
    if (cells.orbit_of(p.cv.at) != cells.orbit_of(p.cu.at)) return;
    const int len = static_cast<int>(orbit.size());
    const int pu = index_in(orbit, p.cu.at), pv = index_in(orbit, p.cv.at);
    out.skip_u = skipped(orbit, pu, (pv - pu + len) % len - 1);
    return;
  }

  const DartId sd = p.crossings.front().side;
  const DartId td = g.darts[sd].twin;
  if (p.cu.at >= 0 && cells.orbit_of(p.cu.at) == cells.orbit_of(sd)) {
    const auto& orbit = orbit_ref(sd);
    const int len = static_cast<int>(orbit.size());
    const int pu = index_in(orbit, p.cu.at), px = index_in(orbit, sd);
    // the cut sits inside the crossed dart, past that dart's origin
    out.skip_u = skipped(orbit, pu, (px - pu + len) % len);
  }
  if (p.cv.at >= 0 && cells.orbit_of(p.cv.at) == cells.orbit_of(td)) {
    const auto& orbit = orbit_ref(td);
    const int len = static_cast<int>(orbit.size());
    const int pv = index_in(orbit, p.cv.at), px = index_in(orbit, td);
    out.skip_v = skipped(orbit, pv, (px - pv + len) % len);
  }

  // the crossing splits its gap on the entry boundary; record the smaller of
  // the two uncrossed-edge counts the split leaves behind
  {
    const auto& orbit = orbit_ref(sd);
    const int len = static_cast<int>(orbit.size());
    const int px = index_in(orbit, sd);
    const EdgeId h = g.darts[sd].edge;
    int p1 = -1, p2 = -1;
    for (int j = 0; j < len && p1 < 0; ++j)
      if (is_occ(orbit, ((px - j) % len + len) % len)) p1 = ((px - j) % len + len) % len;
    for (int j = 1; j <= len && p2 < 0; ++j)
      if (is_occ(orbit, (px + j) % len)) p2 = (px + j) % len;
    if (p1 < 0) return;
    std::set<EdgeId> s1, s2;
    for (int q = p1; q != px; q = (q + 1) % len) {
      const EdgeId e = g.darts[orbit[q]].edge;
      if (!g.crossed(e) && !g.pseudo_edge[e] && e != h) s1.insert(e);
    }
    for (int q = (px + 1) % len; q != p2; q = (q + 1) % len) {
      const EdgeId e = g.darts[orbit[q]].edge;
      if (!g.crossed(e) && !g.pseudo_edge[e] && e != h) s2.insert(e);
    }
    const int c1 = std::min(static_cast<int>(s1.size()), k + 1);
    const int c2 = std::min(static_cast<int>(s2.size()), k + 1);
    out.low_count = std::min(c1, c2);
    out.low_first = c1 <= c2;
  }
}

}  // namespace

std::vector<InsertionClass> enumerate_classes(const Drawing& g, const PartitionProfile& base,
                                              EdgeId e, const std::vector<Vertex>& X, int k) {
  std::vector<InsertionClass> out;
  const std::set<Vertex> xs(X.begin(), X.end());
  for (const EdgePlacement& p : enumerate_placements(g, e)) {
    Drawing after = g;
    after.place_edge(p);
    PartitionProfile prof = apply_placement(base, g, p, after);
    bool fresh = true;
    for (const InsertionClass& cls : out)
      if (profiles_equivalent(prof, cls.profile)) {
        fresh = false;
        break;
      }
    if (!fresh) continue;
    InsertionClass cls;
    cls.rep = p;
    cls.profile = std::move(prof);
    describe(g, p, xs, k, cls);
    out.push_back(std::move(cls));
  }
  return out;
}

std::vector<InsertionClass> enumerate_classes(const Drawing& g, EdgeId e,
                                              const std::vector<Vertex>& X, int k) {
  return enumerate_classes(g, compute_profile(g, X, k), e, X, k);
}

std::optional<Solution> solve_edges_only(const Instance& inst) {
  if (!inst.add_vertices.empty())
    throw StructuralError("edges-only solver: instance still has vertices to place");
  if (inst.ic)
    throw StructuralError("edges-only solver: restricted regime is handled elsewhere");

  const int k = static_cast<int>(inst.add_edges.size());
  const std::vector<Vertex> X = attachment_set(inst);
  const PartitionProfile base = compute_profile(inst.g, X, k);

  std::vector<PlaceStep> steps;
  std::optional<Solution> found;
  std::function<bool(const Drawing&, const PartitionProfile&, size_t)> go =
      [&](const Drawing& g, const PartitionProfile& prof, size_t i) -> bool {
    if (i == inst.add_edges.size()) {
      if (!validate_one_planar(g).ok()) return false;
      found = Solution{g, steps};
      return true;
    }
    for (InsertionClass& cls : enumerate_classes(g, prof, inst.add_edges[i], X, k)) {
      Drawing next = g;
      next.place_edge(cls.rep);
      steps.push_back(to_portable(g, cls.rep));
      if (go(next, cls.profile, i + 1)) return true;
      steps.pop_back();
    }
    return false;
  };
  go(inst.g, base, 0);
  return found;
}

}  // namespace planext
