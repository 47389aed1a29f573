#pragma once

#include <string>

#include "planext/drawing.hpp"

namespace planext {

// Display-only coordinates for a drawing: each connected component is laid
// out in its own horizontal strip, outer cell pinned to a circle, interior
// nodes of the planarization relaxed to the mean of their neighbours (fixed
// iteration count, so the text is byte-stable).  Crossed edges are drawn as
// polylines through their crossing points; crossing points get a square
// mark, real vertices a labelled dot.  Undrawn edges are not rendered.
std::string render_svg(const Drawing& g);

}  // namespace planext
