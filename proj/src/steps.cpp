#include "planext/steps.hpp"

namespace planext {

PortableDart to_portable(const Drawing& g, DartId d) {
  return {g.darts[d].edge, g.darts[d].seg, g.is_forward(d)};
}

DartId resolve(const Drawing& g, const PortableDart& pd) {
  return g.seg_dart(pd.edge, pd.seg, pd.from_u);
}

namespace {

PortableCorner corner_out(const Drawing& g, const Corner& c) {
  PortableCorner pc;
  pc.node = g.nodes[c.node].v;
  if (c.at != -1) pc.at = to_portable(g, c.at);
  return pc;
}

Corner corner_in(const Drawing& g, const PortableCorner& pc) {
  Corner c;
  c.node = g.node_of(pc.node);
  c.at = pc.at ? resolve(g, *pc.at) : -1;
  return c;
}

}  // namespace

PlaceStep to_portable(const Drawing& before, const EdgePlacement& p) {
  PlaceStep s;
  s.edge = p.e;
  s.cu = corner_out(before, p.cu);
  s.cv = corner_out(before, p.cv);
  for (const CrossSpec& cs : p.crossings) s.crossings.push_back(to_portable(before, cs.side));
  for (const FloatSide& fs : p.sides) {
    if (fs.comp == -1) {
      s.sides.push_back({-1, fs.hop, fs.left});
    } else {
      if (before.nodes[fs.comp].v == -1)
        throw StructuralError("float side anchored at a crossing point");
      s.sides.push_back({before.nodes[fs.comp].v, fs.hop, fs.left});
    }
  }
  if (p.host) s.host = to_portable(before, *p.host);
  return s;
}

EdgePlacement resolve(const Drawing& g, const PlaceStep& s) {
  EdgePlacement p;
  p.e = s.edge;
  p.cu = corner_in(g, s.cu);
  p.cv = corner_in(g, s.cv);
  for (const PortableDart& pd : s.crossings) p.crossings.push_back({resolve(g, pd)});
  for (const PortableSide& ps : s.sides) {
    NodeId n = ps.anchor == -1 ? -1 : g.node_of(ps.anchor);
    p.sides.push_back({n, ps.hop, ps.left});
  }
  if (s.host) p.host = resolve(g, *s.host);
  return p;
}

void replay(Drawing& g, const std::vector<PlaceStep>& steps, bool check) {
  for (const PlaceStep& s : steps) g.place_edge(resolve(g, s), check);
}

PortableDart devirtualize(const Drawing& scratch, const PortableDart& pd) {
  if (scratch.pseudo_edge[pd.edge]) throw StructuralError("wall dart has no plain counterpart");
  int plain_seg = 0;
  for (int i = 0; i < pd.seg; ++i) {
    NodeId x = scratch.chain[pd.edge][i];
    auto e0 = scratch.darts[scratch.nodes[x].rot[0]].edge;
    auto e1 = scratch.darts[scratch.nodes[x].rot[1]].edge;
    if (!scratch.pseudo_edge[e0] && !scratch.pseudo_edge[e1]) ++plain_seg;
  }
  return {pd.edge, plain_seg, pd.from_u};
}

PlaceStep devirtualize(const Drawing& scratch, const PlaceStep& s) {
  PlaceStep out = s;
  if (out.cu.at) out.cu.at = devirtualize(scratch, *out.cu.at);
  if (out.cv.at) out.cv.at = devirtualize(scratch, *out.cv.at);
  for (auto& c : out.crossings) c = devirtualize(scratch, c);
  if (out.host) out.host = devirtualize(scratch, *out.host);
  return out;
}

}  // namespace planext
