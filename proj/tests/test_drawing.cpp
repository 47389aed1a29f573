#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "planext/drawing.hpp"

using namespace planext;

static int cell_count(const Drawing& g) { return Cells(g).count(); }

TEST_CASE("triangle has two cells and sound structure") {
  Drawing g = fix::triangle();
  std::string why;
  CHECK(g.structurally_sound(&why));
  INFO(why);
  Cells c(g);
  CHECK(c.count() == 2);
  CHECK(c.orbit_count() == 2);
  CHECK(c.outer_cell() == c.cell_of(g.outer));
  // interior on the left: the orbit of (0->1) walks 0,1,2 counterclockwise
  DartId d01 = g.edarts[0][0];
  CHECK(c.cell_of(d01) != c.outer_cell());
  CHECK(c.orbit(c.orbit_of(d01)).size() == 3);
}

TEST_CASE("quad with a chord makes three cells") {
  Drawing g = fix::cycle(4);
  CHECK(cell_count(g) == 2);
  EdgeId ch = g.add_edge(0, 2, true);
  DartId d01 = g.edarts[0][0];
  DartId d23 = g.edarts[2][0];
  EdgePlacement p;
  p.e = ch;
  p.cu = {g.node_of(0), d01};
  p.cv = {g.node_of(2), d23};
  g.place_edge(p);
  std::string why;
  CHECK(g.structurally_sound(&why));
  INFO(why);
  Cells c(g);
  CHECK(c.count() == 3);
  // the chord's two darts border the two halves; the forward dart's cell is
  // on its left, which the corner choice put on the {0,2,3} side
  DartId df = g.edarts[ch][0];
  CHECK(c.cell_of(df) != c.cell_of(g.darts[df].twin));
  CHECK(c.cell_of(d23) == c.cell_of(df));
  CHECK(c.cell_of(d01) == c.cell_of(g.darts[df].twin));
}

TEST_CASE("placing a corner pair from different cells is rejected") {
  Drawing g = fix::cycle(4);
  EdgeId ch = g.add_edge(0, 2, true);
  EdgePlacement p;
  p.e = ch;
  p.cu = {g.node_of(0), g.edarts[0][0]};                  // inner
  p.cv = {g.node_of(2), g.darts[g.edarts[2][0]].twin};    // outer side
  CHECK_THROWS_AS(g.place_edge(p), PlacementError);
}

TEST_CASE("one crossing: rotation at the point follows the convention") {
  Drawing g;
  for (int i = 0; i < 4; ++i) g.add_node(i);
  EdgeId e01 = g.add_edge(0, 1, true);
  EdgeId e23 = g.add_edge(2, 3, true);
  g.place_edge({e01, {g.node_of(0), -1}, {g.node_of(1), -1}, {}, {}, {}});

  DartId d01 = g.edarts[e01][0];
  EdgePlacement p;
  p.e = e23;
  p.cu = {g.node_of(2), -1};
  p.cv = {g.node_of(3), -1};
  p.crossings = {CrossSpec{d01}};
  g.place_edge(p);

  std::string why;
  CHECK(g.structurally_sound(&why));
  INFO(why);
  REQUIRE(g.chain[e23].size() == 1);
  NodeId x = g.chain[e23][0];
  REQUIRE(g.chain[e01] == std::vector<NodeId>{x});
  const auto& rot = g.nodes[x].rot;
  REQUIRE(rot.size() == 4);
  // entered from the left of (0->1): clockwise reads back-to-2, to-1, on-to-3, to-0
  CHECK(g.head(rot[0]) == g.node_of(2));
  CHECK(g.head(rot[1]) == g.node_of(1));
  CHECK(g.head(rot[2]) == g.node_of(3));
  CHECK(g.head(rot[3]) == g.node_of(0));
  // segment numbering from each edge's u side
  CHECK(g.darts[d01].seg == 0);
  CHECK(g.darts[g.seg_dart(e01, 1, false)].origin == g.node_of(1));
  CHECK(g.segments(e01) == 2);
  CHECK(g.segments(e23) == 2);
  CHECK(cell_count(g) == 1);
  CHECK(g.real_crossings(e01) == 1);
}

TEST_CASE("crossing given by the backward dart mirrors the rotation") {
  Drawing g;
  for (int i = 0; i < 4; ++i) g.add_node(i);
  EdgeId e01 = g.add_edge(0, 1, true);
  EdgeId e23 = g.add_edge(2, 3, true);
  g.place_edge({e01, {g.node_of(0), -1}, {g.node_of(1), -1}, {}, {}, {}});
  DartId d10 = g.edarts[e01][1];
  EdgePlacement p;
  p.e = e23;
  p.cu = {g.node_of(2), -1};
  p.cv = {g.node_of(3), -1};
  p.crossings = {CrossSpec{d10}};
  g.place_edge(p);
  NodeId x = g.chain[e23][0];
  const auto& rot = g.nodes[x].rot;
  CHECK(g.head(rot[0]) == g.node_of(2));
  CHECK(g.head(rot[1]) == g.node_of(0));
  CHECK(g.head(rot[2]) == g.node_of(3));
  CHECK(g.head(rot[3]) == g.node_of(1));
}

TEST_CASE("K4 drawn with one crossing has five cells") {
  Drawing g = fix::cycle(4);
  EdgeId d1 = g.add_edge(0, 2, true);
  EdgeId d2 = g.add_edge(1, 3, true);
  g.place_edge({d1, {g.node_of(0), g.edarts[0][0]}, {g.node_of(2), g.edarts[2][0]}, {}, {}, {}});
  // second diagonal crosses the first inside; entry cell holds the corner of 1
  DartId chord_fwd = g.edarts[d1][0];
  Cells before(g);
  Corner cu{g.node_of(1), g.edarts[1][0]};
  DartId side = before.cell_of_corner(cu) == before.cell_of(chord_fwd)
                    ? chord_fwd
                    : g.darts[chord_fwd].twin;
  EdgePlacement p;
  p.e = d2;
  p.cu = cu;
  p.cv = {g.node_of(3), g.edarts[3][0]};
  p.crossings = {CrossSpec{side}};
  REQUIRE_NOTHROW(g.place_edge(p));
  std::string why;
  CHECK(g.structurally_sound(&why));
  INFO(why);
  CHECK(cell_count(g) == 5);
  CHECK(g.nodes.size() == 5);
}

TEST_CASE("restriction undoes an added crossing edge") {
  Drawing g;
  for (int i = 0; i < 4; ++i) g.add_node(i);
  EdgeId e01 = g.add_edge(0, 1, true);
  EdgeId e23 = g.add_edge(2, 3, false);
  g.place_edge({e01, {g.node_of(0), -1}, {g.node_of(1), -1}, {}, {}, {}});
  Drawing plain = g;  // before the addition
  g.place_edge({e23, {g.node_of(2), -1}, {g.node_of(3), -1}, {CrossSpec{g.edarts[e01][0]}}, {}, {}});
  Drawing r = restrict_drawing(g, g.is_h_edge);
  std::string why;
  CHECK(r.structurally_sound(&why));
  INFO(why);
  CHECK(same_map(r, plain, &why));
  INFO(why);
  CHECK(r.chain[e01].empty());
}

TEST_CASE("map comparison sees outer cell and chirality") {
  Drawing a = fix::triangle();
  Drawing b = fix::triangle();
  CHECK(same_map(a, b));
  CHECK(map_key(a) == map_key(b));
  b.outer = b.darts[b.outer].twin;
  CHECK(!same_map(a, b));
}

TEST_CASE("floating component commits into the marked cell") {
  Drawing g = fix::triangle();
  g.add_node(4);
  g.add_node(5);
  EdgeId e45 = g.add_edge(4, 5, false);
  EdgePlacement fp;
  fp.e = e45;
  fp.cu = {g.node_of(4), -1};
  fp.cv = {g.node_of(5), -1};
  fp.host = g.outer;
  g.place_edge(fp);
  std::string why;
  CHECK(g.structurally_sound(&why));
  INFO(why);
  CHECK(g.floats.size() == 1);
  Cells c(g);
  CHECK(c.orbit_count() == 3);
  CHECK(c.count() == 2);  // float's orbit fuses with the outer cell
  CHECK(c.cell_of(g.edarts[e45][0]) == c.outer_cell());

  // connecting edge must use a corner on the hosting cell
  EdgeId e40 = g.add_edge(4, 0, false);
  Corner bad{g.node_of(0), g.edarts[0][0]};  // inner corner
  EdgePlacement wrong;
  wrong.e = e40;
  wrong.cu = {g.node_of(4), g.edarts[e45][0]};
  wrong.cv = bad;
  CHECK_THROWS_AS(g.place_edge(wrong), PlacementError);

  // pick the corner of vertex 0 that borders the outer cell
  Corner cv{-1, -1};
  for (Corner cand : g.corners(g.node_of(0)))
    if (Cells(g).cell_of_corner(cand) == Cells(g).outer_cell()) cv = cand;
  REQUIRE(cv.node != -1);
  EdgePlacement commit;
  commit.e = e40;
  commit.cu = {g.node_of(4), g.edarts[e45][0]};
  commit.cv = cv;
  REQUIRE_NOTHROW(g.place_edge(commit));
  CHECK(g.floats.empty());
  CHECK(g.structurally_sound(&why));
  INFO(why);
  CHECK(cell_count(g) == 2);
}

TEST_CASE("split of a hosting cell sends the float to the chosen side") {
  Drawing g = fix::cycle(4);
  g.add_node(8);
  g.add_node(9);
  EdgeId e89 = g.add_edge(8, 9, false);
  DartId d01 = g.edarts[0][0];
  EdgePlacement fp;
  fp.e = e89;
  fp.cu = {g.node_of(8), -1};
  fp.cv = {g.node_of(9), -1};
  fp.host = d01;  // inside the quad
  g.place_edge(fp);

  EdgeId ch = g.add_edge(0, 2, false);
  EdgePlacement p;
  p.e = ch;
  p.cu = {g.node_of(0), d01};
  p.cv = {g.node_of(2), g.edarts[2][0]};
  p.sides = {FloatSide{g.node_of(8), 0, true}};
  g.place_edge(p);
  std::string why;
  CHECK(g.structurally_sound(&why));
  INFO(why);
  Cells c(g);
  DartId df = g.edarts[ch][0];
  CHECK(c.cell_of(g.edarts[e89][0]) == c.cell_of(df));

  // and the mirror choice on a fresh copy
  Drawing h = fix::cycle(4);
  h.add_node(8);
  h.add_node(9);
  EdgeId f89 = h.add_edge(8, 9, false);
  h.place_edge({f89, {h.node_of(8), -1}, {h.node_of(9), -1}, {}, {}, h.edarts[0][0]});
  EdgeId ch2 = h.add_edge(0, 2, false);
  EdgePlacement q;
  q.e = ch2;
  q.cu = {h.node_of(0), h.edarts[0][0]};
  q.cv = {h.node_of(2), h.edarts[2][0]};
  q.sides = {FloatSide{h.node_of(8), 0, false}};
  h.place_edge(q);
  Cells hc(h);
  DartId hdf = h.edarts[ch2][0];
  CHECK(hc.cell_of(h.edarts[f89][0]) == hc.cell_of(h.darts[hdf].twin));
}

TEST_CASE("pendant and path fixtures stay sound") {
  for (int n : {2, 3, 5, 9}) {
    Drawing g = fix::path(n);
    std::string why;
    CHECK(g.structurally_sound(&why));
    INFO(why);
    CHECK(cell_count(g) == 1);
  }
  for (int n : {3, 4, 6, 10}) {
    Drawing g = fix::cycle(n);
    CHECK(cell_count(g) == 2);
  }
}
