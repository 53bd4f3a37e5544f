#pragma once

#include <array>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "okh/diagram.hpp"

namespace okh {

enum class MoveKind { R1, R2, R3 };
enum class MoveDirection { Apply, Undo };

// Field use by kind:
//   R1 apply: arc, sign (of the new crossing), side (+1 loop left of the strand, -1 right).
//   R1 undo:  crossings[0], a crossing with a monogon.
//   R2 apply: arc is pushed across arc2 through the face on side `side` of arc
//             (+1 left, -1 right, relative to arc's orientation); over_first
//             puts arc on top.
//   R2 undo:  crossings[0], crossings[1] bounding a bigon.
//   R3:       crossings of a triangular face; arc (if nonzero) must lie on it.
struct MoveSpec {
  MoveKind kind = MoveKind::R1;
  MoveDirection direction = MoveDirection::Apply;
  ArcId arc = 0;
  ArcId arc2 = 0;
  int sign = 1;
  int side = 1;
  bool over_first = true;
  std::array<int, 3> crossings{-1, -1, -1};

  std::string describe() const;
};

LinkDiagram apply_move(const LinkDiagram& d, const MoveSpec& mv);

// The move undoing `mv`, valid on apply_move(d, mv).
MoveSpec inverse_move(const LinkDiagram& d, const MoveSpec& mv);

// Every valid move location; apply moves are skipped when they would exceed
// max_crossings.
std::vector<MoveSpec> available_moves(const LinkDiagram& d, int max_crossings);

// A crossing carrying a monogon: the loop arc returns to the crossing, the
// strand enters through `in` and leaves through `out` (equal on a one-arc
// component). side is +1 when the loop lies left of the strand.
struct CurlSite {
  int crossing = -1;
  ArcId loop = 0, in = 0, out = 0;
  int sign = 1, side = 1;
};

std::optional<CurlSite> curl_at(const LinkDiagram& d, int crossing);

// Applies `count` uniformly chosen moves (first by kind, then by location).
LinkDiagram random_moves(const LinkDiagram& d, int count, std::mt19937_64& rng, int max_crossings,
                         std::vector<MoveSpec>* log = nullptr);

}  // namespace okh
