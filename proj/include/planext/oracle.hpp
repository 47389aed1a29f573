#pragma once

#include <functional>

#include "planext/instance.hpp"
#include "planext/steps.hpp"
#include "planext/validate.hpp"

// Exhaustive reference search: drive a partial drawing to completion by
// trying every legal placement of every remaining edge.  Everything else in
// the library is checked against this at small scale.

namespace planext {

struct PlacementRules {
  bool ic = false;
  Mode mode = Mode::Strict;
  bool allow_crossings = true;
  // extra vetoes; unset means allowed
  std::function<bool(const Drawing&, DartId)> crossable;
  std::function<bool(const Drawing&, const Corner&)> corner_ok;
  std::function<bool(const Drawing&, const Cells&, int)> cell_ok;  // float hosts
};

// all legal ways to draw edge e into g: corner pairs sharing a cell, plus one
// crossing through any crossable segment, plus floating placements when both
// ends are bare; placements splitting a cell that hosts floating parts are
// emitted once per side assignment
std::vector<EdgePlacement> enumerate_placements(const Drawing& g, EdgeId e,
                                                const PlacementRules& rules = {});

// the given undrawn edges ordered so each has a previously touched endpoint;
// parts that never reach the fixed drawing are seeded from their smallest
// vertex and come out last (the enumerator draws them floating)
std::vector<EdgeId> anchored_edge_order(const Drawing& g, const std::vector<Vertex>& added,
                                        const std::vector<EdgeId>& edges);
// same, over every undrawn real edge
std::vector<EdgeId> anchored_edge_order(const Drawing& g, const std::vector<Vertex>& added);

struct OracleOptions {
  PlacementRules rules;
  long long budget = -1;   // attempted placements, BudgetExceeded beyond
  int max_solutions = -1;  // stop once this many distinct drawings are found
  bool keep_solutions = true;
};

struct OracleResult {
  bool yes = false;
  long long tried = 0;
  std::vector<Solution> solutions;  // distinct as maps
};

OracleResult oracle_extend(const Drawing& start, const std::vector<EdgeId>& order,
                           const OracleOptions& opt = {});
OracleResult oracle_extend(const Instance& inst, const OracleOptions& opt = {});

}  // namespace planext
