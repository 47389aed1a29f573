#pragma once

#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "planext/base.hpp"

// Combinatorial map of a (partially drawn) 1-planar graph.
//
// Conventions, fixed once and used everywhere:
//  - rotations store darts in CLOCKWISE order around each node
//  - face_next(d) = rot_next_cw(twin(d)); orbits walk a cell counterclockwise,
//    interior on the left of every dart, so orbit(d) is the cell left of d
//  - a corner is the wedge immediately clockwise-before its `at` dart;
//    inserting a dart at a corner puts it clockwise-before `at`;
//    cell_of_corner(d) == orbit(d)
//  - crossing points are degree-4 nodes; if the crossed segment's side dart
//    runs a->b (entry cell = left of a->b) and the new edge runs u..v through
//    it, the clockwise rotation at the point is (Xu, Xb, Xv, Xa)
//  - edge segments: chain[e] lists crossing points from u to v; segment s
//    joins chain point s and s+1; both darts of a segment carry seg = s; the
//    dart whose origin is chain point s is the forward (from_u) dart

namespace planext {

struct Edge {
  Vertex u = -1, v = -1;
};

enum class NodeKind : uint8_t { Real, CrossingPt };

struct MapNode {
  NodeKind kind = NodeKind::Real;
  Vertex v = -1;               // Real only
  std::vector<DartId> rot;     // clockwise
};

struct Dart {
  DartId twin = -1;
  NodeId origin = -1;
  EdgeId edge = -1;
  int seg = 0;
};

struct Corner {
  NodeId node = -1;
  DartId at = -1;  // -1 only while the node has no darts
};

struct CrossSpec {
  DartId side = -1;  // dart of the crossed segment; its left cell is the cell entered from
};

// a drawn component not yet connected to the grounded part
struct FloatInfo {
  DartId host = -1;   // dart on the hosting cell's boundary (different component)
  DartId outer = -1;  // dart on this component's orbit that faces the host
};

// when a placement splits a cell that hosts floating parts, each part must be
// told which side of the new curve it keeps to; comp == -1 addresses the
// split cell's own base orbit (relevant when the split orbit belongs to a
// floating component)
struct FloatSide {
  NodeId comp = -1;
  int hop = 0;      // 0 = segment out of cu, then one per crossing passed
  bool left = true; // left of the curve oriented cu -> cv
};

struct EdgePlacement {
  EdgeId e = -1;
  Corner cu, cv;
  std::vector<CrossSpec> crossings;
  std::vector<FloatSide> sides;
  // both endpoints dartless and the drawing already has darts: the edge is
  // drawn as a floating component inside the cell this dart borders
  // (unset: outer cell)
  std::optional<DartId> host;
};

class Drawing;

class Cells {
public:
  explicit Cells(const Drawing& g);

  int orbit_of(DartId d) const { return orbit_id_[d]; }
  // merged cell: orbits linked through hosted floating components
  int cell_of(DartId d) const { return cell_of_orbit(orbit_id_[d]); }
  int cell_of_orbit(int orbit) const;
  // -1 for a dartless (free) node's corner
  int cell_of_corner(const Corner& c) const;
  int outer_cell() const { return outer_cell_; }
  int count() const { return n_cells_; }
  int orbit_count() const { return static_cast<int>(orbits_.size()); }
  // face_next walk order, counterclockwise around the cell's interior
  const std::vector<DartId>& orbit(int i) const { return orbits_[i]; }
  const std::vector<std::vector<DartId>>& orbits() const { return orbits_; }
  const std::vector<int>& orbits_in_cell(int cell) const;

private:
  std::vector<int> orbit_id_;
  std::vector<std::vector<DartId>> orbits_;
  std::vector<int> orbit_cell_;              // orbit -> dense cell id
  std::vector<std::vector<int>> cell_orbits_;
  int outer_cell_ = -1;
  int n_cells_ = 0;
};

class Drawing {
public:
  // graph payload; edge ids are positions in `edges`
  std::vector<Edge> edges;
  std::vector<char> is_h_edge;
  std::vector<char> pseudo_edge;
  std::vector<char> drawn;

  std::vector<MapNode> nodes;
  std::vector<char> pseudo_node;
  std::vector<Dart> darts;
  std::vector<std::vector<NodeId>> chain;   // per edge, crossing points u to v
  std::vector<std::vector<DartId>> edarts;  // per edge, its live darts
  std::unordered_map<Vertex, NodeId> vnode;
  DartId outer = -1;
  NodeId ground = -1;  // component that owns the outer cell

  std::set<DartId> uncrossable;  // forward darts of segments no placement may cross

  Dsu comp;                           // over nodes
  std::map<NodeId, FloatInfo> floats; // keyed by comp root

  NodeId add_node(Vertex v, bool pseudo = false);
  EdgeId add_edge(Vertex u, Vertex v, bool h, bool pseudo = false);

  NodeId node_of(Vertex v) const;
  bool dartless(NodeId n) const { return nodes[n].rot.empty(); }
  DartId rot_next_cw(DartId d) const;
  DartId rot_prev_cw(DartId d) const;
  DartId face_next(DartId d) const { return rot_next_cw(darts[d].twin); }
  DartId face_prev(DartId d) const { return darts[rot_prev_cw(d)].twin; }
  NodeId head(DartId d) const { return darts[darts[d].twin].origin; }
  bool crossed(EdgeId e) const { return !chain[e].empty(); }
  int segments(EdgeId e) const { return static_cast<int>(chain[e].size()) + 1; }
  // i in [0, segments(e)]: endpoint nodes and crossing points along e
  NodeId chain_point(EdgeId e, int i) const;
  DartId seg_dart(EdgeId e, int seg, bool from_u) const;
  bool is_forward(DartId d) const;  // origin is the u-side chain point of its segment
  DartId forward_dart(DartId d) const { return is_forward(d) ? d : darts[d].twin; }
  bool grounded(NodeId n) const;
  // number of real (both edges non-pseudo) crossing points on e's chain
  int real_crossings(EdgeId e) const;

  // corners of n in rotation order; a dartless node has the single corner {n, -1}
  std::vector<Corner> corners(NodeId n) const;

  // check: verify cell memberships before mutating (throws PlacementError)
  void place_edge(const EdgePlacement& p, bool check = true);

  void set_uncrossable(EdgeId e);  // every current segment of e

  bool structurally_sound(std::string* why = nullptr) const;

  // low-level builders for loaders; place_edge is the normal path
  DartId new_dart(NodeId origin, EdgeId e, int seg);

private:
  void rot_insert_before(NodeId n, DartId pos, DartId d);
  friend class Cells;
};

// H-restriction and map comparison -------------------------------------------

// keep[e] selects edges; crossing points between two kept edges persist,
// split segments of kept edges re-merge across dropped ones.  The returned
// drawing's outer cell is the restricted cell the original outer mark lies in.
Drawing restrict_drawing(const Drawing& g, const std::vector<char>& keep);

// equality of combinatorial maps under canonical names: nodes by vertex label
// resp. crossed edge pair, rotations cyclically, plus the outer cell.
// Hosting cells of disconnected components are not part of the comparison.
bool same_map(const Drawing& a, const Drawing& b, std::string* why = nullptr);

// canonical byte form of the map (used for dedup and golden tests)
std::string map_key(const Drawing& g);

}  // namespace planext
