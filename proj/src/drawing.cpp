#include "planext/drawing.hpp"

#include <algorithm>
#include <sstream>

namespace planext {

NodeId Drawing::add_node(Vertex v, bool pseudo) {
  MapNode n;
  n.kind = v == -1 ? NodeKind::CrossingPt : NodeKind::Real;
  n.v = v;
  nodes.push_back(std::move(n));
  pseudo_node.push_back(pseudo ? 1 : 0);
  NodeId id = static_cast<NodeId>(nodes.size()) - 1;
  comp.add();
  if (v != -1) {
    if (vnode.count(v)) throw StructuralError("duplicate vertex label");
    vnode[v] = id;
    if (ground == -1) ground = id;
  }
  return id;
}

EdgeId Drawing::add_edge(Vertex u, Vertex v, bool h, bool pseudo) {
  if (u == v) throw StructuralError("self loop");
  node_of(u);
  node_of(v);
  edges.push_back({u, v});
  is_h_edge.push_back(h ? 1 : 0);
  pseudo_edge.push_back(pseudo ? 1 : 0);
  drawn.push_back(0);
  chain.emplace_back();
  edarts.emplace_back();
  return static_cast<EdgeId>(edges.size()) - 1;
}

NodeId Drawing::node_of(Vertex v) const {
  auto it = vnode.find(v);
  if (it == vnode.end()) throw StructuralError("unknown vertex");
  return it->second;
}

DartId Drawing::rot_next_cw(DartId d) const {
  const auto& r = nodes[darts[d].origin].rot;
  auto it = std::find(r.begin(), r.end(), d);
  if (it == r.end()) throw StructuralError("dart missing from its rotation");
  ++it;
  return it == r.end() ? r.front() : *it;
}

DartId Drawing::rot_prev_cw(DartId d) const {
  const auto& r = nodes[darts[d].origin].rot;
  auto it = std::find(r.begin(), r.end(), d);
  if (it == r.end()) throw StructuralError("dart missing from its rotation");
  return it == r.begin() ? r.back() : *(it - 1);
}

NodeId Drawing::chain_point(EdgeId e, int i) const {
  int m = static_cast<int>(chain[e].size());
  if (i < 0 || i > m + 1) throw StructuralError("chain point out of range");
  if (i == 0) return node_of(edges[e].u);
  if (i == m + 1) return node_of(edges[e].v);
  return chain[e][i - 1];
}

bool Drawing::is_forward(DartId d) const {
  return darts[d].origin == chain_point(darts[d].edge, darts[d].seg);
}

DartId Drawing::seg_dart(EdgeId e, int seg, bool from_u) const {
  for (DartId d : edarts[e])
    if (darts[d].seg == seg && is_forward(d) == from_u) return d;
  throw StructuralError("segment dart not found");
}

bool Drawing::grounded(NodeId n) const {
  return ground != -1 && comp.find(n) == comp.find(ground);
}

int Drawing::real_crossings(EdgeId e) const {
  int c = 0;
  for (NodeId x : chain[e]) {
    for (DartId d : nodes[x].rot)
      if (darts[d].edge != e && !pseudo_edge[darts[d].edge]) {
        ++c;
        break;
      }
  }
  return c;
}

std::vector<Corner> Drawing::corners(NodeId n) const {
  if (nodes[n].rot.empty()) return {Corner{n, -1}};
  std::vector<Corner> cs;
  cs.reserve(nodes[n].rot.size());
  for (DartId d : nodes[n].rot) cs.push_back(Corner{n, d});
  return cs;
}

void Drawing::rot_insert_before(NodeId n, DartId pos, DartId d) {
  auto& r = nodes[n].rot;
  if (pos == -1) {
    if (!r.empty()) throw PlacementError("corner without position at a node with darts");
    r.push_back(d);
    return;
  }
  auto it = std::find(r.begin(), r.end(), pos);
  if (it == r.end()) throw PlacementError("corner dart not at this node");
  r.insert(it, d);
}

DartId Drawing::new_dart(NodeId origin, EdgeId e, int seg) {
  darts.push_back({-1, origin, e, seg});
  return static_cast<DartId>(darts.size()) - 1;
}

namespace {

std::optional<FloatInfo> take_float(std::map<NodeId, FloatInfo>& m, NodeId key) {
  auto it = m.find(key);
  if (it == m.end()) return std::nullopt;
  FloatInfo f = it->second;
  m.erase(it);
  return f;
}

}  // namespace

void Drawing::place_edge(const EdgePlacement& p, bool check) {
  EdgeId e = p.e;
  if (e < 0 || e >= static_cast<EdgeId>(edges.size())) throw PlacementError("bad edge id");
  if (drawn[e]) throw PlacementError("edge already drawn");
  NodeId nu = node_of(edges[e].u), nv = node_of(edges[e].v);
  if (p.cu.node != nu || p.cv.node != nv) throw PlacementError("corner nodes do not match edge ends");
  for (const Corner& c : {p.cu, p.cv}) {
    if (dartless(c.node)) {
      if (c.at != -1) throw PlacementError("corner dart at a dartless node");
    } else {
      if (c.at == -1 || darts[c.at].origin != c.node) throw PlacementError("corner dart not at its node");
    }
  }
  for (const CrossSpec& cs : p.crossings) {
    if (cs.side < 0 || cs.side >= static_cast<DartId>(darts.size())) throw PlacementError("bad crossing dart");
    if (darts[cs.side].edge == e) throw PlacementError("edge crossing itself");
    if (uncrossable.count(forward_dart(cs.side))) throw PlacementError("segment is uncrossable");
  }

  bool u_free = dartless(nu), v_free = dartless(nv);
  int m = static_cast<int>(p.crossings.size());

  // both ends bare and nothing to anchor through: either the very first piece
  // of the drawing or a new floating component
  bool floating = u_free && v_free && m == 0 && outer != -1;
  DartId float_host = -1;
  if (floating) {
    float_host = p.host.value_or(outer);
    if (float_host < 0 || float_host >= static_cast<DartId>(darts.size()))
      throw PlacementError("bad float host dart");
  } else if (p.host) {
    throw PlacementError("host given for an anchored placement");
  }

  std::optional<Cells> cells;
  if (check || !floats.empty()) cells.emplace(*this);

  if (check && cells) {
    // walk the intended cells: corner of cu, then across each crossed segment
    int cur = cells->cell_of_corner(p.cu);
    for (int i = 0; i < m; ++i) {
      int there = cells->cell_of(p.crossings[i].side);
      if (cur != -1 && cur != there) throw PlacementError("crossed segment not on the current cell");
      cur = cells->cell_of(darts[p.crossings[i].side].twin);
    }
    int cv_cell = cells->cell_of_corner(p.cv);
    if (cur != -1 && cv_cell != -1 && cur != cv_cell)
      throw PlacementError("end corner not on the current cell");
    if (floating) {
      // nothing to check: any cell may host
    }
  }

  NodeId tail = nu;
  DartId tail_at = p.cu.at;
  std::vector<DartId> hop_fwd(m + 1, -1);
  std::vector<NodeId> xs;
  bool had_darts = outer != -1;

  for (int i = 0; i <= m; ++i) {
    DartId df = new_dart(tail, e, i);
    DartId db;
    NodeId target_node;
    if (i < m) {
      DartId sd = p.crossings[i].side;
      EdgeId f = darts[sd].edge;
      if (!drawn[f]) throw PlacementError("crossing an undrawn edge");
      int t = darts[sd].seg;
      NodeId a = darts[sd].origin;
      DartId sdt = darts[sd].twin;
      NodeId b = darts[sdt].origin;
      target_node = a;

      NodeId x = add_node(-1);
      xs.push_back(x);
      chain[f].insert(chain[f].begin() + t, x);
      for (DartId d : edarts[f])
        if (darts[d].seg > t) darts[d].seg++;
      bool a_upstream = a == chain_point(f, t);
      DartId xa = new_dart(x, f, a_upstream ? t : t + 1);
      DartId xb = new_dart(x, f, a_upstream ? t + 1 : t);
      darts[sd].seg = darts[xa].seg;
      darts[sdt].seg = darts[xb].seg;
      darts[xa].twin = sd;
      darts[sd].twin = xa;
      darts[xb].twin = sdt;
      darts[sdt].twin = xb;
      edarts[f].push_back(xa);
      edarts[f].push_back(xb);

      db = new_dart(x, e, i);
      nodes[x].rot = {db, xb, xa};  // forward dart of the next hop lands before xa
      darts[df].twin = db;
      darts[db].twin = df;
      rot_insert_before(tail, tail_at, df);

      // component bookkeeping for the new point
      NodeId rT = comp.find(tail), rF = comp.find(a);
      if (rT != rF) {
        bool gT = grounded(tail), gF = grounded(a);
        auto fT = take_float(floats, rT);
        auto fF = take_float(floats, rF);
        comp.unite(rT, rF);
        NodeId r = comp.find(rT);
        if (!gT && !gF) {
          if (fT && fF) {
            // one hosted inside the other, or both hosted in the same cell
            if (comp.find(darts[fF->host].origin) == r) {
              floats[r] = *fT;
            } else if (comp.find(darts[fT->host].origin) == r) {
              floats[r] = *fF;
            } else {
              floats[r] = FloatInfo{fT->host, df};
            }
          } else if (fT) {
            floats[r] = *fT;
          } else if (fF) {
            floats[r] = *fF;
          }
        }
      }
      comp.unite(comp.find(tail), comp.find(x));

      hop_fwd[i] = df;
      tail = x;
      tail_at = xa;
    } else {
      target_node = nv;
      db = new_dart(nv, e, i);
      darts[df].twin = db;
      darts[db].twin = df;
      rot_insert_before(tail, tail_at, df);
      rot_insert_before(nv, p.cv.at, db);

      NodeId rT = comp.find(tail), rF = comp.find(nv);
      if (rT != rF) {
        bool gT = grounded(tail), gF = grounded(nv);
        auto fT = take_float(floats, rT);
        auto fF = take_float(floats, rF);
        comp.unite(rT, rF);
        NodeId r = comp.find(rT);
        if (!gT && !gF) {
          if (fT && fF) {
            if (comp.find(darts[fF->host].origin) == r) {
              floats[r] = *fT;
            } else if (comp.find(darts[fT->host].origin) == r) {
              floats[r] = *fF;
            } else {
              floats[r] = FloatInfo{fT->host, df};
            }
          } else if (fT) {
            floats[r] = *fT;
          } else if (fF) {
            floats[r] = *fF;
          } else if (floating) {
            floats[r] = FloatInfo{float_host, df};
          }
        }
      }
      hop_fwd[i] = df;
    }
    (void)target_node;
  }

  chain[e] = xs;
  for (int i = 0; i <= m; ++i) {
    edarts[e].push_back(hop_fwd[i]);
    edarts[e].push_back(darts[hop_fwd[i]].twin);
  }
  drawn[e] = 1;

  if (!had_darts) {
    outer = hop_fwd[0];
    ground = comp.find(nu);
  }

  // floating parts keeping to a chosen side of the new curve
  for (const FloatSide& fs : p.sides) {
    if (fs.hop < 0 || fs.hop > m) throw PlacementError("side entry for a missing hop");
    DartId df = hop_fwd[fs.hop];
    DartId keep = fs.left ? df : darts[df].twin;
    if (fs.comp == -1) {
      NodeId r = comp.find(nu);
      auto it = floats.find(r);
      if (it == floats.end()) throw PlacementError("base side entry without a floating split");
      it->second.outer = keep;
    } else {
      NodeId r = comp.find(fs.comp);
      auto it = floats.find(r);
      if (it == floats.end()) throw PlacementError("side entry for a non-floating component");
      it->second.host = keep;
    }
  }
}

void Drawing::set_uncrossable(EdgeId e) {
  for (int s = 0; s < segments(e); ++s) uncrossable.insert(seg_dart(e, s, true));
}

bool Drawing::structurally_sound(std::string* why) const {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  std::vector<int> seen(darts.size(), 0);
  for (NodeId n = 0; n < static_cast<NodeId>(nodes.size()); ++n) {
    for (DartId d : nodes[n].rot) {
      if (d < 0 || d >= static_cast<DartId>(darts.size())) return fail("rotation holds a bad dart");
      if (darts[d].origin != n) return fail("dart in a foreign rotation");
      if (seen[d]++) return fail("dart in two rotations");
    }
    if (nodes[n].kind == NodeKind::CrossingPt) {
      const auto& r = nodes[n].rot;
      if (r.size() != 4) return fail("crossing point degree is not 4");
      EdgeId e0 = darts[r[0]].edge, e1 = darts[r[1]].edge;
      if (e0 == e1 || darts[r[2]].edge != e0 || darts[r[3]].edge != e1)
        return fail("crossing point edges do not alternate");
    }
  }
  for (DartId d = 0; d < static_cast<DartId>(darts.size()); ++d) {
    if (!seen[d]) return fail("dart not in any rotation");
    DartId t = darts[d].twin;
    if (t < 0 || t >= static_cast<DartId>(darts.size()) || darts[t].twin != d)
      return fail("twin not involutive");
    if (darts[t].edge != darts[d].edge) return fail("twin on a different edge");
    if (comp.find(darts[d].origin) != comp.find(darts[t].origin))
      return fail("edge spans two components");
  }
  for (EdgeId e = 0; e < static_cast<EdgeId>(edges.size()); ++e) {
    if (!drawn[e]) {
      if (!edarts[e].empty() || !chain[e].empty()) return fail("undrawn edge with darts");
      continue;
    }
    int segs = segments(e);
    if (static_cast<int>(edarts[e].size()) != 2 * segs) return fail("wrong dart count on an edge");
    std::vector<int> fwd(segs, 0), bwd(segs, 0);
    for (DartId d : edarts[e]) {
      if (darts[d].edge != e) return fail("foreign dart listed on an edge");
      int s = darts[d].seg;
      if (s < 0 || s >= segs) return fail("segment index out of range");
      NodeId o = darts[d].origin;
      if (o == chain_point(e, s))
        fwd[s]++;
      else if (o == chain_point(e, s + 1))
        bwd[s]++;
      else
        return fail("dart origin not on its segment");
    }
    for (int s = 0; s < segs; ++s)
      if (fwd[s] != 1 || bwd[s] != 1) return fail("segment without its two darts");
    for (NodeId x : chain[e]) {
      if (nodes[x].kind != NodeKind::CrossingPt) return fail("chain through a vertex");
      bool has = false;
      for (DartId d : nodes[x].rot) has |= darts[d].edge == e;
      if (!has) return fail("chain point misses its edge");
    }
  }
  if (outer == -1) {
    for (const auto& n : nodes)
      if (!n.rot.empty()) return fail("darts without an outer mark");
  } else {
    if (outer < 0 || outer >= static_cast<DartId>(darts.size())) return fail("bad outer mark");
    if (ground == -1 || comp.find(darts[outer].origin) != comp.find(ground))
      return fail("outer mark off the grounded component");
  }
  for (const auto& [root, fi] : floats) {
    if (comp.find(root) != root) return fail("float keyed by a non-root");
    if (ground != -1 && root == comp.find(ground)) return fail("grounded component listed floating");
    if (comp.find(darts[fi.outer].origin) != root) return fail("float outer dart off its component");
    if (comp.find(darts[fi.host].origin) == root) return fail("float hosted by itself");
  }
  if (ground != -1) {
    NodeId gr = comp.find(ground);
    for (NodeId n = 0; n < static_cast<NodeId>(nodes.size()); ++n) {
      if (nodes[n].rot.empty()) continue;
      NodeId r = comp.find(n);
      if (r != gr && !floats.count(r)) return fail("drawn component neither grounded nor floating");
    }
  }
  return true;
}

// Cells -----------------------------------------------------------------------

Cells::Cells(const Drawing& g) {
  orbit_id_.assign(g.darts.size(), -1);
  for (DartId d = 0; d < static_cast<DartId>(g.darts.size()); ++d) {
    if (orbit_id_[d] != -1) continue;
    int id = static_cast<int>(orbits_.size());
    orbits_.emplace_back();
    DartId w = d;
    do {
      orbit_id_[w] = id;
      orbits_[id].push_back(w);
      w = g.face_next(w);
    } while (w != d);
  }
  Dsu du(static_cast<int>(orbits_.size()));
  for (const auto& [root, fi] : g.floats) du.unite(orbit_id_[fi.host], orbit_id_[fi.outer]);
  std::map<int, int> dense;
  orbit_cell_.assign(orbits_.size(), -1);
  for (int i = 0; i < static_cast<int>(orbits_.size()); ++i) {
    int r = du.find(i);
    auto [it, fresh] = dense.emplace(r, static_cast<int>(dense.size()));
    orbit_cell_[i] = it->second;
    (void)fresh;
  }
  n_cells_ = static_cast<int>(dense.size());
  cell_orbits_.assign(n_cells_, {});
  for (int i = 0; i < static_cast<int>(orbits_.size()); ++i) cell_orbits_[orbit_cell_[i]].push_back(i);
  outer_cell_ = g.outer >= 0 ? orbit_cell_[orbit_id_[g.outer]] : -1;
}

int Cells::cell_of_orbit(int orbit) const { return orbit_cell_[orbit]; }

int Cells::cell_of_corner(const Corner& c) const {
  if (c.at == -1) return -1;
  return cell_of(c.at);
}

const std::vector<int>& Cells::orbits_in_cell(int cell) const { return cell_orbits_[cell]; }

// restriction -----------------------------------------------------------------

Drawing restrict_drawing(const Drawing& g, const std::vector<char>& keep) {
  Drawing r;
  std::vector<NodeId> nmap(g.nodes.size(), -1);
  for (NodeId n = 0; n < static_cast<NodeId>(g.nodes.size()); ++n)
    if (g.nodes[n].kind == NodeKind::Real) nmap[n] = r.add_node(g.nodes[n].v, g.pseudo_node[n]);
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edges.size()); ++e)
    r.add_edge(g.edges[e].u, g.edges[e].v, g.is_h_edge[e], g.pseudo_edge[e]);

  auto kept = [&](EdgeId e) { return keep[e] && g.drawn[e]; };

  // crossing points survive when both their edges do
  for (NodeId n = 0; n < static_cast<NodeId>(g.nodes.size()); ++n) {
    if (g.nodes[n].kind != NodeKind::CrossingPt) continue;
    EdgeId e0 = g.darts[g.nodes[n].rot[0]].edge, e1 = g.darts[g.nodes[n].rot[1]].edge;
    if (kept(e0) && kept(e1)) nmap[n] = r.add_node(-1);
  }
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edges.size()); ++e) {
    if (!kept(e)) continue;
    for (NodeId x : g.chain[e])
      if (nmap[x] != -1) r.chain[e].push_back(nmap[x]);
    r.drawn[e] = 1;
    int segs = r.segments(e);
    for (int s = 0; s < segs; ++s) {
      DartId df = r.new_dart(r.chain_point(e, s), e, s);
      DartId db = r.new_dart(r.chain_point(e, s + 1), e, s);
      r.darts[df].twin = db;
      r.darts[db].twin = df;
      r.edarts[e].push_back(df);
      r.edarts[e].push_back(db);
    }
  }

  // old dart -> new dart, matched by (edge, mapped origin, heads toward v)
  auto translate = [&](DartId od) -> DartId {
    EdgeId e = g.darts[od].edge;
    if (!kept(e)) return -1;
    NodeId no = nmap[g.darts[od].origin];
    if (no == -1) return -1;
    bool toward_v = g.is_forward(od);
    for (DartId nd : r.edarts[e])
      if (r.darts[nd].origin == no && r.is_forward(nd) == toward_v) return nd;
    throw StructuralError("restriction lost a dart");
  };

  for (NodeId n = 0; n < static_cast<NodeId>(g.nodes.size()); ++n) {
    if (nmap[n] == -1) continue;
    auto& rot = r.nodes[nmap[n]].rot;
    rot.clear();
    for (DartId d : g.nodes[n].rot) {
      DartId nd = translate(d);
      if (nd != -1) rot.push_back(nd);
    }
  }

  for (DartId d = 0; d < static_cast<DartId>(r.darts.size()); ++d)
    r.comp.unite(r.darts[d].origin, r.darts[r.darts[d].twin].origin);

  // the restricted outer cell: cells merge across every dropped curve
  if (g.outer != -1) {
    Dsu du(static_cast<int>(g.darts.size()));
    for (DartId d = 0; d < static_cast<DartId>(g.darts.size()); ++d) du.unite(d, g.face_next(d));
    for (DartId d = 0; d < static_cast<DartId>(g.darts.size()); ++d) {
      if (!kept(g.darts[d].edge)) du.unite(d, g.darts[d].twin);
      // a kept edge's split segments merge across a dropped crossing: the
      // cells flanking the dropped edge were united just above, which joins
      // the four wedges around the point correctly
    }
    int oc = du.find(g.outer);
    r.outer = -1;
    for (DartId d = 0; d < static_cast<DartId>(g.darts.size()); ++d) {
      if (du.find(d) == oc) {
        DartId nd = translate(d);
        if (nd != -1) {
          r.outer = nd;
          break;
        }
      }
    }
    if (r.outer != -1) r.ground = r.darts[r.outer].origin;
  }
  return r;
}

// canonical names -------------------------------------------------------------

namespace {

std::string ekey(const Drawing& g, EdgeId e) {
  int a = g.edges[e].u, b = g.edges[e].v;
  if (a > b) std::swap(a, b);
  return std::to_string(a) + "-" + std::to_string(b);
}

struct Named {
  std::map<std::string, std::vector<std::string>> rot;  // node name -> cw dart names
  std::set<std::string> outer_orbit;
  std::set<std::string> verts;
  std::set<std::string> drawn_edges;
  bool ok = true;
  std::string why;
};

Named name_map(const Drawing& g) {
  Named out;
  std::vector<std::string> nname(g.nodes.size());
  for (NodeId n = 0; n < static_cast<NodeId>(g.nodes.size()); ++n) {
    if (g.nodes[n].kind == NodeKind::Real) {
      nname[n] = "v" + std::to_string(g.nodes[n].v);
      // a node without darts sits anywhere; it does not pin the map
      if (!g.nodes[n].rot.empty()) out.verts.insert(nname[n]);
    } else {
      EdgeId e0 = g.darts[g.nodes[n].rot[0]].edge, e1 = g.darts[g.nodes[n].rot[1]].edge;
      std::string k0 = ekey(g, e0), k1 = ekey(g, e1);
      if (k1 < k0) std::swap(k0, k1);
      nname[n] = "x(" + k0 + "," + k1 + ")";
    }
  }
  {
    std::set<std::string> uniq(nname.begin(), nname.end());
    if (uniq.size() != nname.size()) {
      out.ok = false;
      out.why = "ambiguous crossing point names";
      return out;
    }
  }
  auto dname = [&](DartId d) {
    return ekey(g, g.darts[d].edge) + ":" + nname[g.darts[d].origin] + ">" +
           nname[g.darts[g.darts[d].twin].origin];
  };
  for (NodeId n = 0; n < static_cast<NodeId>(g.nodes.size()); ++n) {
    if (g.nodes[n].rot.empty()) continue;
    std::vector<std::string> rs;
    for (DartId d : g.nodes[n].rot) rs.push_back(dname(d));
    out.rot[nname[n]] = std::move(rs);
  }
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edges.size()); ++e)
    if (g.drawn[e]) out.drawn_edges.insert(ekey(g, e));
  if (g.outer != -1) {
    DartId w = g.outer;
    do {
      out.outer_orbit.insert(dname(w));
      w = g.face_next(w);
    } while (w != g.outer);
  }
  return out;
}

std::vector<std::string> min_rotation(std::vector<std::string> v) {
  if (v.empty()) return v;
  int n = static_cast<int>(v.size());
  int best = 0;
  for (int s = 1; s < n; ++s) {
    for (int i = 0; i < n; ++i) {
      const auto& a = v[(best + i) % n];
      const auto& b = v[(s + i) % n];
      if (a != b) {
        if (b < a) best = s;
        break;
      }
    }
  }
  std::vector<std::string> out(n);
  for (int i = 0; i < n; ++i) out[i] = v[(best + i) % n];
  return out;
}

}  // namespace

bool same_map(const Drawing& a, const Drawing& b, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  Named na = name_map(a), nb = name_map(b);
  if (!na.ok) return fail(na.why);
  if (!nb.ok) return fail(nb.why);
  if (na.verts != nb.verts) return fail("vertex sets differ");
  if (na.drawn_edges != nb.drawn_edges) return fail("drawn edge sets differ");
  if (na.rot.size() != nb.rot.size()) return fail("node sets differ");
  for (const auto& [name, ra] : na.rot) {
    auto it = nb.rot.find(name);
    if (it == nb.rot.end()) return fail("node " + name + " missing");
    if (min_rotation(ra) != min_rotation(it->second))
      return fail("rotation differs at " + name);
  }
  if (na.outer_orbit.empty() != nb.outer_orbit.empty()) return fail("one outer cell missing");
  if (!na.outer_orbit.empty()) {
    // rotations agree, so orbits agree; equal outer cells share every dart
    if (na.outer_orbit != nb.outer_orbit) return fail("outer cells differ");
  }
  return true;
}

std::string map_key(const Drawing& g) {
  Named n = name_map(g);
  if (!n.ok) throw StructuralError(n.why);
  std::ostringstream os;
  for (const auto& [name, rot] : n.rot) {
    os << name << "[";
    for (const auto& d : min_rotation(rot)) os << d << ";";
    os << "]";
  }
  os << "|outer:";
  for (const auto& d : n.outer_orbit) os << d << ";";
  return os.str();
}

}  // namespace planext
