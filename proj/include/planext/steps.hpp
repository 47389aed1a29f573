#pragma once

#include "planext/drawing.hpp"

// Placements in a portable form: darts are named by (edge, segment, heading),
// so a recorded construction can be replayed onto a different base drawing of
// the same instance, or onto a clean copy without scratch walls.

namespace planext {

struct PortableDart {
  EdgeId edge = -1;
  int seg = 0;
  bool from_u = true;  // origin is the chain point nearer the edge's u end
  auto operator<=>(const PortableDart&) const = default;
};

struct PortableCorner {
  Vertex node = -1;
  std::optional<PortableDart> at;  // unset: the vertex has no darts yet
};

struct PortableSide {
  Vertex anchor = -1;  // a vertex of the floating component; -1: the split cell's base orbit
  int hop = 0;
  bool left = true;
};

struct PlaceStep {
  EdgeId edge = -1;
  PortableCorner cu, cv;
  std::vector<PortableDart> crossings;
  std::vector<PortableSide> sides;
  std::optional<PortableDart> host;  // floating placement: a dart of the hosting cell
};

struct Solution {
  Drawing drawing;
  std::vector<PlaceStep> steps;
};

PortableDart to_portable(const Drawing& g, DartId d);
DartId resolve(const Drawing& g, const PortableDart& pd);

// `before` is the drawing the placement applies to (segment indices are read
// against it)
PlaceStep to_portable(const Drawing& before, const EdgePlacement& p);
EdgePlacement resolve(const Drawing& g, const PlaceStep& s);

void replay(Drawing& g, const std::vector<PlaceStep>& steps, bool check = true);

// map a reference made against a wall-augmented drawing to the same segment
// of the wall-free drawing: only crossings between two real edges survive
PortableDart devirtualize(const Drawing& scratch, const PortableDart& pd);
PlaceStep devirtualize(const Drawing& scratch, const PlaceStep& s);

}  // namespace planext
