#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <map>
#include <set>

#include "fixtures.hpp"
#include "planext/embedding_graph.hpp"
#include "planext/io.hpp"
#include "planext/oracle.hpp"

using namespace planext;
using nlohmann::json;

namespace {

using fix::crossed_quad;

int count_role(const EmbeddingGraph& eg, EgRole r) {
  int c = 0;
  for (const auto& n : eg.nodes) c += n.role == r;
  return c;
}

int degree_sum(const EmbeddingGraph& eg) {
  int c = 0;
  for (const auto& a : eg.adj) c += static_cast<int>(a.size());
  return c;
}

// face-vertex -> the embedding-graph nodes its shadows copy
std::map<int, std::set<int>> boundary_sets(const EmbeddingGraph& eg) {
  std::map<int, std::set<int>> out;
  for (const auto& [c, f] : eg.of_cell) out[f];
  for (int i = 0; i < eg.size(); ++i)
    if (eg.nodes[i].role == EgRole::Shadow)
      out[eg.of_cell.at(eg.nodes[i].cell)].insert(eg.nodes[i].of);
  return out;
}

using fix::tower;

void check_recombined(const Drawing& out, const Instance& inst) {
  for (EdgeId e : inst.add_edges) CHECK(out.drawn[e]);
  ValidationReport v = inst.ic ? validate_ic(out) : validate_one_planar(out);
  INFO(v.brief());
  CHECK(v.ok());
  std::string why;
  bool ext = is_extension(out, inst.g, &why);
  INFO(why);
  CHECK(ext);
}

}  // namespace

TEST_CASE("triangle labels: counts, degrees, shadow cycles") {
  EmbeddingGraph eg = build_embedding_graph(fix::triangle(), {});
  CHECK(eg.size() == 20);
  CHECK(count_role(eg, EgRole::Original) == 3);
  CHECK(count_role(eg, EgRole::EdgeVertex) == 3);
  CHECK(count_role(eg, EgRole::FaceVertex) == 2);
  CHECK(count_role(eg, EgRole::CrossingVertex) == 0);
  CHECK(count_role(eg, EgRole::Shadow) == 12);
  CHECK(degree_sum(eg) == 84);  // 42 links
  for (int i = 0; i < eg.size(); ++i) {
    if (eg.nodes[i].role != EgRole::Shadow) {
      CHECK(eg.shadow_next[i] == -1);
      continue;
    }
    // six copies around each face, alternating vertex and edge targets
    int steps = 0, at = i;
    do {
      int nxt = eg.shadow_next[at];
      REQUIRE(nxt != -1);
      CHECK(eg.nodes[nxt].cell == eg.nodes[i].cell);
      CHECK(eg.nodes[eg.nodes[at].of].role !=
            eg.nodes[eg.nodes[nxt].of].role);
      at = nxt;
      ++steps;
    } while (at != i);
    CHECK(steps == 6);
  }
}

TEST_CASE("a crossed quad counts its cells' shadows") {
  EmbeddingGraph eg = build_embedding_graph(crossed_quad(), {});
  CHECK(eg.size() == 38);
  CHECK(count_role(eg, EgRole::Original) == 4);
  CHECK(count_role(eg, EgRole::CrossingVertex) == 1);
  CHECK(count_role(eg, EgRole::EdgeVertex) == 4);
  CHECK(count_role(eg, EgRole::FaceVertex) == 5);
  CHECK(count_role(eg, EgRole::Shadow) == 24);
  CHECK(degree_sum(eg) == 168);  // 84 links
  std::map<int, int> per_cell;
  for (const auto& n : eg.nodes)
    if (n.role == EgRole::Shadow) per_cell[n.cell]++;
  std::vector<int> counts;
  for (const auto& [c, k] : per_cell) counts.push_back(k);
  std::sort(counts.begin(), counts.end());
  CHECK(counts == std::vector<int>{4, 4, 4, 4, 8});
}

TEST_CASE("triangle distances: vertex to face two, touching faces four") {
  Drawing g = fix::triangle();
  EmbeddingGraph eg = build_embedding_graph(g, {});
  std::vector<int> faces;
  for (const auto& [c, f] : eg.of_cell) faces.push_back(f);
  REQUIRE(faces.size() == 2);
  for (const auto& [n, en] : eg.of_node) {
    std::vector<int> d = eg_distances(eg, {en});
    for (int f : faces) CHECK(d[f] == 2);
  }
  std::vector<int> d = eg_distances(eg, {faces[0]});
  CHECK(d[faces[1]] == 4);
}

TEST_CASE("crossing point distances in the crossed quad") {
  Drawing g = crossed_quad();
  EmbeddingGraph eg = build_embedding_graph(g, {});
  int xp = -1;
  for (const auto& [n, en] : eg.of_node)
    if (eg.nodes[en].role == EgRole::CrossingVertex) xp = en;
  REQUIRE(xp != -1);
  std::vector<int> d = eg_distances(eg, {xp});
  auto bounds = boundary_sets(eg);
  int incident = 0;
  for (const auto& [f, set] : bounds) {
    if (set.count(xp)) {
      CHECK(d[f] == 2);
      ++incident;
    } else {
      CHECK(d[f] > 2);
    }
  }
  CHECK(incident == 4);  // the crossing sits on the four inner cells
}

TEST_CASE("boundary sharing is distance four on generated drawings") {
  for (std::uint64_t seed : {1, 2, 3, 4, 5, 6, 7, 8}) {
    GenParams par;
    par.seed = seed;
    par.n = 8;
    par.edge_dels = 2;
    par.vertex_dels = 1;
    Instance inst = generate_instance(par);
    const Drawing& g = inst.g;
    EmbeddingGraph eg = build_embedding_graph(g, attachment_set(inst));

    int drawn_uncrossed = 0, crossing_nodes = 0, darted = 0;
    for (EdgeId e = 0; e < static_cast<EdgeId>(g.edges.size()); ++e)
      if (g.drawn[e] && !g.crossed(e)) ++drawn_uncrossed;
    for (NodeId n = 0; n < static_cast<NodeId>(g.nodes.size()); ++n) {
      if (g.dartless(n)) continue;
      if (g.nodes[n].kind == NodeKind::CrossingPt) ++crossing_nodes;
      else ++darted;
    }
    Cells cells(g);
    CHECK(count_role(eg, EgRole::Original) == darted);
    CHECK(count_role(eg, EgRole::CrossingVertex) == crossing_nodes);
    CHECK(count_role(eg, EgRole::EdgeVertex) == drawn_uncrossed);
    CHECK(count_role(eg, EgRole::FaceVertex) == cells.count());

    // the copy cycles partition the shadows within each cell
    std::map<int, int> indeg;
    for (int i = 0; i < eg.size(); ++i) {
      if (eg.nodes[i].role != EgRole::Shadow) continue;
      int nxt = eg.shadow_next[i];
      REQUIRE(nxt != -1);
      CHECK(eg.nodes[nxt].role == EgRole::Shadow);
      CHECK(eg.nodes[nxt].cell == eg.nodes[i].cell);
      indeg[nxt]++;
      CHECK(cells.cell_of(eg.nodes[i].seen_from) == eg.nodes[i].cell);
    }
    for (const auto& [s, k] : indeg) CHECK(k == 1);

    auto bounds = boundary_sets(eg);
    for (const auto& [f, set] : bounds) {
      std::vector<int> d = eg_distances(eg, {f});
      for (const auto& [f2, set2] : bounds) {
        if (f == f2) continue;
        bool share = false;
        for (int t : set) share = share || set2.count(t);
        if (share) CHECK(d[f2] == 4);
        else CHECK(d[f2] > 4);
      }
      for (const auto& [n, en] : eg.of_node) {
        if (set.count(en)) CHECK(d[en] == 2);
        else CHECK(d[en] > 2);
      }
    }
  }
}

TEST_CASE("the tower fixture is a plane triangulation with a long waist") {
  Instance inst = tower(4, {});
  Cells cells(inst.g);
  CHECK(cells.count() == 24);  // 6m triangles
  EmbeddingGraph eg = build_embedding_graph(inst.g, {});
  std::vector<int> d = eg_distances(eg, {eg.of_node.at(inst.g.node_of(0))});
  CHECK(d[eg.of_node.at(inst.g.node_of(1))] == 10);  // 2(m+1)
}

TEST_CASE("attachment set and deletion parameter") {
  Drawing g = fix::path(4);
  g.add_node(9);
  Instance inst;
  inst.g = g;
  inst.add_vertices = {9};
  inst.add_edges = {inst.g.add_edge(9, 1, false), inst.g.add_edge(9, 2, false)};
  CHECK(attachment_set(inst) == std::vector<Vertex>{1, 2});
  CHECK(deletion_parameter(inst, false) == 2);
  CHECK(deletion_parameter(inst, true) == 1);  // both edges end at the added vertex

  inst.add_edges.push_back(inst.g.add_edge(0, 2, false));
  CHECK(attachment_set(inst) == std::vector<Vertex>{0, 1, 2});
  CHECK(deletion_parameter(inst, false) == 3);
  CHECK(deletion_parameter(inst, true) == 2);
}

TEST_CASE("pruning needs a connected fixed part") {
  Drawing g = fix::path(2);
  g.add_node(2);
  g.add_node(3);
  EdgeId e = g.add_edge(2, 3, true);
  EdgePlacement p;
  p.e = e;
  p.cu = {g.node_of(2), -1};
  p.cv = {g.node_of(3), -1};
  p.host = g.outer;
  g.place_edge(p);
  Instance inst;
  inst.g = g;
  CHECK_THROWS_AS(prune(inst, false), StructuralError);

  Instance bare;
  bare.g = fix::path(2);
  bare.g.add_node(7);  // a fixed vertex nothing reaches
  CHECK_THROWS_AS(prune(bare, false), StructuralError);
}

TEST_CASE("nothing to add prunes to nothing") {
  Instance inst;
  inst.g = fix::triangle();
  PruneOutcome out = prune(inst, false);
  CHECK(!out.certified_no);
  CHECK(out.parts.empty());
}

TEST_CASE("a small instance prunes to itself") {
  GenParams par;
  par.seed = 5;
  par.n = 7;
  par.edge_dels = 2;
  par.vertex_dels = 1;
  Instance inst = generate_instance(par);
  PruneOutcome out = prune(inst, false);
  REQUIRE(!out.certified_no);
  REQUIRE(out.parts.size() == 1);
  const Instance& part = out.parts[0];
  CHECK(same_map(part.g, inst.g));
  CHECK(part.add_edges == inst.add_edges);
  std::vector<Vertex> a = part.add_vertices, b = inst.add_vertices;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  CHECK(a == b);
  REQUIRE(part.pruned_k);
  CHECK(*part.pruned_k == static_cast<int>(inst.add_edges.size()));
}

TEST_CASE("a long tube with ends to join certifies no") {
  Instance inst = tower(11, {{0, 1}});
  PruneOutcome out = prune(inst, false);
  CHECK(out.certified_no);
  OracleResult r = oracle_extend(inst);
  CHECK(!r.yes);
}

TEST_CASE("a local edge on the tube prunes, solves, and recombines") {
  Instance inst = tower(11, {{2, 7}});
  PruneOutcome out = prune(inst, false);
  REQUIRE(!out.certified_no);
  REQUIRE(out.parts.size() == 1);
  const Instance& part = out.parts[0];

  // the far end really went: its apex keeps no darts in the part
  CHECK(part.g.dartless(part.g.node_of(1)));
  int kept = 0, all = 0;
  for (EdgeId e = 0; e < static_cast<EdgeId>(inst.g.edges.size()); ++e) {
    all += inst.g.drawn[e];
    kept += part.g.drawn[e];
  }
  CHECK(kept < all);

  EmbeddingGraph eg = build_embedding_graph(part.g, attachment_set(part));
  int ecc = radius_check(eg, part);
  CHECK(ecc > 0);
  CHECK(ecc <= 4 * *part.pruned_k + 8);

  OracleResult r = oracle_extend(part);
  REQUIRE(r.yes);
  Drawing outd = recombine(inst, {r.solutions.front()});
  check_recombined(outd, inst);
}

TEST_CASE("a far target stays no through the pipeline") {
  Instance inst = tower(11, {{0, 8}});
  PruneOutcome out = prune(inst, false);
  REQUIRE(!out.certified_no);
  REQUIRE(out.parts.size() == 1);
  CHECK(!oracle_extend(out.parts[0]).yes);
  CHECK(!oracle_extend(inst).yes);
}

TEST_CASE("pruning equivalence on generated instances") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    GenParams par;
    par.seed = seed;
    par.n = 7;
    par.edge_dels = 2;
    par.vertex_dels = 1;
    Instance inst = generate_instance(par);
    CAPTURE(seed);
    PruneOutcome out = prune(inst, false);
    REQUIRE(!out.certified_no);  // generated instances always extend
    REQUIRE(out.parts.size() == 1);  // nothing is far at this scale
    OracleOptions opt;
    opt.max_solutions = 3;
    opt.budget = 2'000'000;
    std::vector<std::vector<Solution>> choices;
    for (const Instance& part : out.parts) {
      OracleResult r = oracle_extend(part, opt);
      REQUIRE(r.yes);
      choices.push_back(r.solutions);
    }
    Drawing outd = recombine_any(inst, choices);
    check_recombined(outd, inst);
  }
}

TEST_CASE("replay transfers around a crossing the part could not see") {
  Drawing fullg = crossed_quad();
  fullg.add_node(9);
  Instance full;
  EdgeId e91 = fullg.add_edge(9, 1, false);
  EdgeId e93 = fullg.add_edge(9, 3, false);
  full.g = fullg;
  full.add_vertices = {9};
  full.add_edges = {e91, e93};

  Instance part;
  std::vector<char> keep(fullg.edges.size(), 1);
  keep[5] = 0;  // the diagonal: in the part, the chord is uncrossed
  part.g = restrict_drawing(fullg, keep);
  part.add_vertices = {9};
  part.add_edges = {e91, e93};
  CHECK(!part.g.crossed(4));
  CHECK(full.g.crossed(4));

  OracleResult r = oracle_extend(part);
  REQUIRE(r.yes);
  std::vector<Solution> through_chord, elsewhere;
  for (const Solution& s : r.solutions) {
    bool hits = false;
    for (const PlaceStep& st : s.steps)
      for (const PortableDart& pd : st.crossings) hits = hits || pd.edge == 4;
    (hits ? through_chord : elsewhere).push_back(s);
  }
  REQUIRE(!through_chord.empty());
  REQUIRE(!elsewhere.empty());

  // a solution using the chord cannot transfer: the diagonal already crossed it
  CHECK_THROWS_AS(recombine(full, {through_chord.front()}), StructuralError);
  Drawing one = recombine(full, {elsewhere.front()});
  check_recombined(one, full);
  Drawing any = recombine_any(full, {r.solutions});
  check_recombined(any, full);
}

TEST_CASE("the radius check skips instances that were never pruned") {
  Instance inst;
  inst.g = fix::triangle();
  EmbeddingGraph eg = build_embedding_graph(inst.g, {});
  CHECK(radius_check(eg, inst) == -1);
}
