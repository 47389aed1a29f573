#pragma once

#include <cstdint>
#include <string>

#include "planext/instance.hpp"

// Instance files are JSON: vertices, h_edges, add_vertices, add_edges as id
// lists; crossings as {"edges": [e, f]} pairs named x0, x1, ... in array
// order; rotation as an object keyed by node name (vertex id or crossing
// name) holding the clockwise list of dart references [edge, seg]; outer as
// [edge, seg, dir] since a bare segment reference cannot tell its two darts
// apart.  A solution file is the same document with every edge in h_edges.
//
// Syntax problems throw nlohmann::json exceptions; semantic problems throw
// StructuralError with the offending path in the message.

namespace planext {

Instance parse_instance(const std::string& text);
std::string write_instance(const Instance& inst);

// a fully drawn graph as a document (drawing files double as solutions)
std::string write_drawing(const Drawing& g);
Drawing parse_drawing(const std::string& text);

struct GenParams {
  std::uint64_t seed = 1;
  int n = 8;          // vertices of the full graph
  int edge_dels = 2;  // edges moved into the added set
  int vertex_dels = 0;
  bool ic = false;
};

// a random one-planar drawing of a small graph, with random parts deleted
// into the added sets; H stays connected, so every instance is extendable
Instance generate_instance(const GenParams& par);

}  // namespace planext
