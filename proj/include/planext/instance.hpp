#pragma once

#include <optional>

#include "planext/drawing.hpp"

namespace planext {

// a drawn fixed part plus the vertices and edges still to place
struct Instance {
  Drawing g;  // fixed edges drawn (h flags set), remaining edges undrawn
  std::vector<Vertex> add_vertices;
  std::vector<EdgeId> add_edges;
  bool ic = false;
  // sub-instances produced by pruning remember the bound they were cut with
  std::optional<int> pruned_k;
};

}  // namespace planext
