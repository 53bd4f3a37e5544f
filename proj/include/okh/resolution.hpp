#pragma once

#include <array>
#include <string>
#include <vector>

#include "okh/diagram.hpp"

namespace okh {

// values[c] is in {0,1} at positive crossings and {-1,0} at negative ones.
struct State {
  std::vector<int> values;

  int height() const;
  int double_count() const;
  bool operator==(const State&) const = default;
  auto operator<=>(const State&) const = default;
};

bool valid_state(const LinkDiagram& d, const State& s);

// All 2^n states, lexicographic in crossing id.
std::vector<State> enumerate_states(const LinkDiagram& d);

// Slots of the strands of the oriented smoothing. The right strand (first
// page) and the left strand (second page) each run from *_in to *_out.
struct StrandRoles {
  int right_in, right_out, left_in, left_out;
};
StrandRoles strand_roles(const Crossing& c);

// Slot paired with `slot` when the crossing is resolved with `value`.
int partner_slot(const Crossing& c, int value, int slot);

// A double edge joins two trivalent vertices: v1 where right_in meets
// left_in, v2 where right_out meets left_out.
struct DoubleEdge {
  int crossing;
  std::array<ArcId, 2> v1;   // (right_in arc, left_in arc)
  std::array<ArcId, 2> v2;   // (right_out arc, left_out arc)
  std::array<int, 2> v1_circles;
  std::array<int, 2> v2_circles;
};

struct ResolvedGraph {
  // circles[i] lists arcs along the traversal, starting at the minimal arc
  // traversed along its orientation.
  std::vector<std::vector<ArcId>> circles;
  std::vector<int> circle_of;   // indexed by LinkDiagram::arc_index
  std::vector<int> parity;      // 1 if the traversal runs against the arc
  std::vector<DoubleEdge> double_edges;

  int circle_count() const { return static_cast<int>(circles.size()); }
};

ResolvedGraph resolve(const LinkDiagram& d, const State& s);

enum class EdgeKind { Merge, Split };

struct EdgeTransition {
  int crossing = -1;
  State from, to;
  EdgeKind kind = EdgeKind::Merge;
  // circle_map[i] = circle of `to` matching untouched circle i of `from`, or -1.
  std::vector<int> circle_map;
  std::vector<int> touched_from;
  std::vector<int> touched_to;
};

EdgeTransition cube_edge(const LinkDiagram& d, const State& s, int crossing);
EdgeTransition cube_edge(const LinkDiagram& d, const State& s, int crossing, const ResolvedGraph& g0,
                         const ResolvedGraph& g1);

// Number of basis elements of the state space, 2^circles.
std::uint64_t module_rank(const ResolvedGraph& g);

// Circle membership lists, one line per circle.
std::string dump(const ResolvedGraph& g);

}  // namespace okh
