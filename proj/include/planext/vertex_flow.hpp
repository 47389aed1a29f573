#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "planext/instance.hpp"
#include "planext/oracle.hpp"

// Routing the edges of an added vertex (a "hub") through the fixed drawing as
// a max-flow problem.  A partial two-coloring of the cells says which cells
// each hub's edges may pass through; per hub, one flow network carries one
// unit per required neighbor, and saturation is equivalent to a
// color-consistent routing.  Witnesses are rebuilt from the flow's face
// choices by replaying them as placements.

namespace planext {

enum class FaceColor : uint8_t { R, B };

// partial: a cell absent from the map admits no added edge at all
struct FaceColoring {
  std::map<int, FaceColor> color;  // keyed by cell id of the fixed drawing
};

// where a hub's point sits.  One cell in the standalone solvers; several only
// when the hub lies on a sweep wall and its wedge touches more than one cell.
struct HubSpec {
  Vertex hub = -1;  // -1: no such hub, its network comes out empty
  std::vector<int> cells;
};

// Nodes: source, sink, one per required neighbor ("target"), one per cell of
// the hub's color.  Arcs: source -> hub cell (unbounded), hub cell -> other
// cell (one unit per crossable edge they share), cell -> target on its
// boundary (1), target -> sink (1).  A unit path of length three is an
// uncrossed edge, length four crosses once; nothing longer exists.  A bare
// target can settle anywhere, so it takes an arc from every colored cell.
struct FlowNetwork {
  struct Arc {
    int from = -1, to = -1;
    int cap = 0, flow = 0;  // partner at index ^1 carries the residual
  };
  int s = 0, t = 1;
  std::vector<Arc> arcs;
  std::vector<std::vector<int>> adj;  // node -> incident arc indices
  std::map<Vertex, int> target_node;
  std::map<int, int> face_node;  // cell -> node
  std::vector<int> hub_cells;
  int demand = 0;  // number of required neighbors

  int add_node();
  int add_arc(int from, int to, int cap);  // returns the forward index
  int node_count() const { return static_cast<int>(adj.size()); }
};

// Edmonds-Karp; arcs keep their final flow so routes can be read back
int max_flow(FlowNetwork& net);

// breadth-first hop counts from a cell, where two cells are adjacent when
// they share a drawn non-pseudo segment; -1 where unreachable
std::vector<int> face_hops(const Drawing& g, const Cells& cells, int from);

// one network per hub over the cells of its color; every edge in
// inst.add_edges must join one hub to a fixed vertex
std::pair<FlowNetwork, FlowNetwork> build_networks(const Instance& inst, const HubSpec& r,
                                                   const HubSpec& b, const FaceColoring& lambda,
                                                   const PlacementRules& rules = {});

// none unless both networks saturate; on success the face choices are
// replayed as placements (backtracking over equivalent exits) and the result
// is validated in the rules' mode
std::optional<Solution> solve_lambda(const Instance& inst, const HubSpec& r, const HubSpec& b,
                                     const FaceColoring& lambda, const PlacementRules& rules = {});

// one added vertex, every missing edge incident to it: branch over the cell
// holding the hub, all cells open
std::optional<Solution> solve_single_vertex(const Instance& inst);

struct FarResult {
  bool applicable = false;
  std::optional<Solution> sol;  // meaningful only when applicable
};

// two added vertices whose chosen cells are at least three hops apart: no
// cell is within reach of both, so each hub colors its cell and the cells one
// hop out, and the two flows decide independently.  Closer placements are
// out of scope here (the sweep handles them).
FarResult solve_far_two_vertices(const Instance& inst, int cell_r, int cell_b);

}  // namespace planext
