#pragma once

#include <map>

#include "planext/instance.hpp"
#include "planext/steps.hpp"

// Labeled plane graph describing the fixed drawing: the planarization with
// every uncrossed edge subdivided, one vertex per cell, and per-cell directed
// shadow cycles tracing the boundary walk.  Distances in this graph drive the
// pruning that cuts an instance down to the parts near the attachment set.

namespace planext {

enum class EgRole : uint8_t { Original, EdgeVertex, FaceVertex, CrossingVertex, Shadow };

struct EmbeddingGraph {
  struct Node {
    EgRole role = EgRole::Original;
    NodeId source = -1;     // Original / CrossingVertex: the drawing node
    EdgeId edge = -1;       // EdgeVertex: the uncrossed edge it subdivides
    int cell = -1;          // FaceVertex / Shadow: the cell (Cells numbering)
    int of = -1;            // Shadow: the node it copies
    DartId seen_from = -1;  // Shadow: boundary dart at which the copy was made
    bool marked = false;    // Original: member of the attachment set
  };
  std::vector<Node> nodes;
  std::vector<std::vector<int>> adj;  // undirected view, used for distances
  std::vector<int> shadow_next;      // Shadow: next copy along its cycle, else -1

  std::map<NodeId, int> of_node;  // drawing node -> Original / CrossingVertex
  std::map<EdgeId, int> of_edge;  // uncrossed drawn edge -> EdgeVertex
  std::map<int, int> of_cell;     // cell id -> FaceVertex

  int size() const { return static_cast<int>(nodes.size()); }
};

// marked: fixed vertices incident to an edge still to draw
EmbeddingGraph build_embedding_graph(const Drawing& g, const std::vector<Vertex>& marked);

// multi-source breadth-first distances over the undirected view; -1 when
// unreachable (shadow arcs count as plain edges here, their direction only
// matters to cyclic-order consumers)
std::vector<int> eg_distances(const EmbeddingGraph& eg, const std::vector<int>& sources);

// fixed vertices incident to at least one edge still to draw, sorted
std::vector<Vertex> attachment_set(const Instance& inst);

// the deletion distance the thresholds scale with: number of added edges, or
// added vertices plus added edges between fixed vertices when ic is set
int deletion_parameter(const Instance& inst, bool ic);

struct PruneOutcome {
  // some component of the pruned graph holds two fixed components: no
  // extension exists, whatever the rest looks like
  bool certified_no = false;
  // one instance per component of the pruned graph that still has edges.
  // Parts share the parent's vertex and edge id space: foreign and cut edges
  // stay present but undrawn, pruned vertices stay present but bare.
  std::vector<Instance> parts;
};

// deletes everything far from the attachment set and splits what remains.
// Far means embedding-graph distance at least 4k+7 at the vertex itself, at
// an uncrossed edge's subdivision point, or at a crossing point (the last two
// cut the edge but keep its endpoints).  Requires the drawn part connected.
PruneOutcome prune(const Instance& inst, bool ic);

// replay the parts' recorded steps onto the full fixed drawing.  Segment
// indices shift where a foreign crossing dissolved in a part's restricted
// view and corner wedges split under foreign darts, so anchors re-resolve
// against the full drawing with backtracking across the candidate wedges and
// segments; only combinations that validate in the instance's mode count.
// Throws when no combination fits.
Drawing recombine(const Instance& original, const std::vector<Solution>& parts);

// same, choosing one solution per part: a part's solution can stray onto the
// fringe its instance could not see (say, crossing an edge whose own crossing
// was cut away) and fail to transfer, while a sibling solution fits
Drawing recombine_any(const Instance& original, const std::vector<std::vector<Solution>>& choices);

// max over face-vertices of the distance to the nearest attachment vertex.
// Returns -1 (skipped) unless the instance is a pruned part; beyond 4k+8 for
// the bound k the part was cut with, throws: that signals a pruning bug.
int radius_check(const EmbeddingGraph& eg, const Instance& pruned_part);

}  // namespace planext
