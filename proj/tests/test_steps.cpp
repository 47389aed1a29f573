#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "planext/steps.hpp"
#include "planext/validate.hpp"

using namespace planext;

namespace {

// place while recording the portable form, as the solvers do
struct Rec {
  Drawing g;
  std::vector<PlaceStep> steps;
  void place(const EdgePlacement& p) {
    steps.push_back(to_portable(g, p));
    g.place_edge(p);
  }
};

}  // namespace

TEST_CASE("every dart survives a portable round trip") {
  Drawing g = fix::cycle(4);
  EdgeId ch = g.add_edge(0, 2, true);
  EdgePlacement p;
  p.e = ch;
  p.cu = {g.node_of(0), g.edarts[0][0]};
  p.cv = {g.node_of(2), g.edarts[2][0]};
  g.place_edge(p);
  EdgeId di = g.add_edge(1, 3, true);
  EdgePlacement q;
  q.e = di;
  q.cu = {g.node_of(1), g.edarts[1][0]};
  q.cv = {g.node_of(3), g.edarts[3][0]};
  q.crossings = {CrossSpec{g.edarts[ch][1]}};
  g.place_edge(q);
  REQUIRE(validate_one_planar(g).ok());
  for (DartId d = 0; d < static_cast<DartId>(g.darts.size()); ++d) {
    CHECK(resolve(g, to_portable(g, d)) == d);
  }
}

TEST_CASE("recorded chord and crossing replay to the same map") {
  Drawing base = fix::cycle(4);
  EdgeId ch = base.add_edge(0, 2, true);
  EdgeId di = base.add_edge(1, 3, true);
  Rec rec{base, {}};
  {
    EdgePlacement p;
    p.e = ch;
    p.cu = {rec.g.node_of(0), rec.g.edarts[0][0]};
    p.cv = {rec.g.node_of(2), rec.g.edarts[2][0]};
    rec.place(p);
  }
  {
    EdgePlacement q;
    q.e = di;
    q.cu = {rec.g.node_of(1), rec.g.edarts[1][0]};
    q.cv = {rec.g.node_of(3), rec.g.edarts[3][0]};
    q.crossings = {CrossSpec{rec.g.edarts[ch][1]}};
    rec.place(q);
  }
  replay(base, rec.steps);
  std::string why;
  CHECK(same_map(base, rec.g, &why));
  INFO(why);
  CHECK(map_key(base) == map_key(rec.g));
}

TEST_CASE("floating placement and later grounding replay") {
  Drawing base = fix::path(2);
  base.add_node(2);
  base.add_node(3);
  EdgeId e23 = base.add_edge(2, 3, true);
  EdgeId e12 = base.add_edge(1, 2, true);
  Rec rec{base, {}};
  {
    EdgePlacement p;
    p.e = e23;
    p.cu = {rec.g.node_of(2), -1};
    p.cv = {rec.g.node_of(3), -1};
    p.host = rec.g.edarts[0][0];
    rec.place(p);
  }
  REQUIRE(rec.g.floats.size() == 1);
  {
    EdgePlacement p;
    p.e = e12;
    p.cu = {rec.g.node_of(1), rec.g.edarts[0][1]};
    p.cv = {rec.g.node_of(2), rec.g.edarts[e23][0]};
    rec.place(p);
  }
  REQUIRE(rec.g.floats.empty());
  replay(base, rec.steps);
  std::string why;
  CHECK(same_map(base, rec.g, &why));
  INFO(why);
}

TEST_CASE("wall crossings drop out of segment numbering") {
  Drawing g;
  g.add_node(0);
  g.add_node(1);
  g.add_node(2);
  g.add_node(3);
  g.add_node(100, true);
  g.add_node(101, true);
  EdgeId e01 = g.add_edge(0, 1, true);
  EdgeId w = g.add_edge(100, 101, false, true);
  EdgeId e23 = g.add_edge(2, 3, true);
  EdgePlacement first;
  first.e = e01;
  first.cu = {g.node_of(0), -1};
  first.cv = {g.node_of(1), -1};
  g.place_edge(first);
  EdgePlacement pw;
  pw.e = w;
  pw.cu = {g.node_of(100), -1};
  pw.cv = {g.node_of(101), -1};
  pw.crossings = {CrossSpec{g.edarts[e01][0]}};
  g.place_edge(pw);
  EdgePlacement pr;
  pr.e = e23;
  pr.cu = {g.node_of(2), -1};
  pr.cv = {g.node_of(3), -1};
  pr.crossings = {CrossSpec{g.seg_dart(e01, 1, true)}};
  g.place_edge(pr);
  REQUIRE(g.chain[e01].size() == 2);

  CHECK(devirtualize(g, PortableDart{e01, 0, true}).seg == 0);
  CHECK(devirtualize(g, PortableDart{e01, 1, true}).seg == 0);
  CHECK(devirtualize(g, PortableDart{e01, 2, true}).seg == 1);
  CHECK(devirtualize(g, PortableDart{e23, 1, false}).seg == 1);
  CHECK_THROWS_AS(devirtualize(g, PortableDart{w, 0, true}), StructuralError);

  // a recorded step against the walled drawing lands on the plain one
  PlaceStep s;
  s.edge = 7;
  s.cu = {5, PortableDart{e01, 2, true}};
  s.cv = {6, std::nullopt};
  s.crossings = {PortableDart{e01, 2, false}};
  PlaceStep out = devirtualize(g, s);
  CHECK(out.cu.at->seg == 1);
  CHECK(out.crossings[0].seg == 1);

  // the clean drawing built without the wall accepts the devirtualized names
  Drawing clean;
  clean.add_node(0);
  clean.add_node(1);
  clean.add_node(2);
  clean.add_node(3);
  EdgeId c01 = clean.add_edge(0, 1, true);
  EdgeId c23 = clean.add_edge(2, 3, true);
  EdgePlacement cf;
  cf.e = c01;
  cf.cu = {clean.node_of(0), -1};
  cf.cv = {clean.node_of(1), -1};
  clean.place_edge(cf);
  EdgePlacement cr;
  cr.e = c23;
  cr.cu = {clean.node_of(2), -1};
  cr.cv = {clean.node_of(3), -1};
  cr.crossings = {CrossSpec{clean.edarts[c01][0]}};
  clean.place_edge(cr);
  DartId d = resolve(clean, devirtualize(g, PortableDart{e01, 2, true}));
  CHECK(clean.darts[d].edge == c01);
  CHECK(clean.darts[d].seg == 1);
  CHECK(clean.is_forward(d));
}

TEST_CASE("a float side with an anchor travels by vertex label") {
  Drawing base = fix::cycle(4);
  base.add_node(7);
  base.add_node(8);
  EdgeId ef = base.add_edge(7, 8, true);
  EdgeId ch = base.add_edge(0, 2, true);
  Rec rec{base, {}};
  {
    EdgePlacement p;
    p.e = ef;
    p.cu = {rec.g.node_of(7), -1};
    p.cv = {rec.g.node_of(8), -1};
    p.host = rec.g.edarts[0][0];  // inside the quad
    rec.place(p);
  }
  {
    EdgePlacement p;
    p.e = ch;
    p.cu = {rec.g.node_of(0), rec.g.edarts[0][0]};
    p.cv = {rec.g.node_of(2), rec.g.edarts[2][0]};
    p.sides = {FloatSide{rec.g.comp.find(rec.g.node_of(7)), 0, true}};
    rec.place(p);
  }
  REQUIRE(rec.g.floats.size() == 1);
  replay(base, rec.steps);
  std::string why;
  CHECK(same_map(base, rec.g, &why));
  INFO(why);
  Vertex a = rec.steps[1].sides.at(0).anchor;
  CHECK((a == 7 || a == 8));
}
