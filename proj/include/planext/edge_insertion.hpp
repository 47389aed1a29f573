#pragma once

#include <map>
#include <optional>
#include <set>

#include "planext/instance.hpp"
#include "planext/steps.hpp"

// Solver for instances where every vertex is already drawn and only edges are
// missing.  Placements of one edge are grouped into classes that leave the
// same trace on the boundaries relevant to the remaining edges; branching
// over one representative per class is exhaustive, and the number of classes
// is quadratic in the number of missing edges.

namespace planext {

// one gap between consecutive attachment-vertex occurrences along a cell
// boundary walk, carrying the uncrossed full edges on its stretch
struct BoundarySegment {
  Vertex x1 = -1, x2 = -1;
  std::set<EdgeId> b;
  bool operator==(const BoundarySegment&) const = default;
};

struct SegAddr {
  int cell = -1, walk = -1, idx = -1;
  auto operator<=>(const SegAddr&) const = default;
};

struct PartitionProfile {
  struct Walk {
    std::vector<Vertex> occ;           // attachment occurrences in walk order
    std::vector<BoundarySegment> seg;  // seg[i] runs occ[i] -> occ[(i+1) % n];
                                       // a single occurrence keeps one full-walk
                                       // (x, x) segment, none when occ is empty
    bool operator==(const Walk&) const = default;
  };
  struct Cell {
    std::vector<Walk> walks;  // one per boundary orbit, hosted floats included
    std::set<Vertex> xs;      // attachment vertices on the boundary
    bool operator==(const Cell&) const = default;
  };
  int k = 0;
  std::set<Vertex> xs;        // the attachment set the profile was built with
  std::map<int, Cell> cells;  // keyed by the drawing's current cell ids
  // |b ∩ b'| for every unordered pair of segments, capped at k+1 (the
  // more-than-k sentinel); self pairs carry the segment's own capped size
  std::map<std::pair<SegAddr, SegAddr>, int> counts;
  bool operator==(const PartitionProfile&) const = default;
};

PartitionProfile compute_profile(const Drawing& g, const std::vector<Vertex>& X, int k);

// the profile of `before` advanced over one placement: cells the curve ran
// through are rebuilt, everything else carries over, and count entries are
// recomputed only where a rebuilt segment is involved (the crossed edge's two
// sides are always rebuilt, so no carried entry can be stale)
PartitionProfile apply_placement(const PartitionProfile& prof, const Drawing& before,
                                 const EdgePlacement& p, const Drawing& after);

// cell bijection preserving each boundary's attachment-vertex set and every
// pairwise shared-count (exactly up to k, jointly beyond-k otherwise);
// boundary orientation may flip per cell, which reverses its segment labels
bool profiles_equivalent(const PartitionProfile& a, const PartitionProfile& b);

// the two placements of the same edge leave equivalent profiles behind
bool equivalent(const Drawing& g, const EdgePlacement& p1, const EdgePlacement& p2,
                const std::vector<Vertex>& X, int k);

struct InsertionClass {
  EdgePlacement rep;         // canonical placement to branch on
  PartitionProfile profile;  // profile of the drawing after rep
  // class coordinates: attachment occurrences the curve skips counterclockwise
  // from each endpoint corner to its cut point (skip_v is -1 when nothing is
  // crossed), and the smaller uncrossed-edge count the crossing splits its
  // boundary gap into
  int skip_u = -1;
  int skip_v = -1;
  int low_count = -1;  // capped at k+1; -1 when nothing is split
  bool low_first = true;
};

// every feasible placement of e is equivalent to exactly one returned class
std::vector<InsertionClass> enumerate_classes(const Drawing& g, const PartitionProfile& base,
                                              EdgeId e, const std::vector<Vertex>& X, int k);
std::vector<InsertionClass> enumerate_classes(const Drawing& g, EdgeId e,
                                              const std::vector<Vertex>& X, int k);

// depth-first branching over class representatives, one added edge at a time
// in the instance's order, carrying the profile forward incrementally.
// Requires an instance with no added vertices and the plain regime.
std::optional<Solution> solve_edges_only(const Instance& inst);

}  // namespace planext
