#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "okh/algebra.hpp"
#include "okh/diagram.hpp"
#include "okh/resolution.hpp"
#include "okh/sparse.hpp"

namespace okh {

// merge mu: 1(x)1 -> delta X, 1(x)X -> alpha 1, X(x)1 -> beta 1, X(x)X -> gamma X
// split sigma: 1 -> a 1(x)1 + e X(x)X, X -> b 1(x)X + c X(x)1
// delta and e are lower-filtration terms and stay zero in the graded ring.
struct SaddleCoefficients {
  std::int64_t alpha = 0, beta = 0, gamma = 0, a = 0, b = 0, c = 0, delta = 0, e = 0;

  bool operator==(const SaddleCoefficients&) const = default;
  auto operator<=>(const SaddleCoefficients&) const = default;
  std::string to_string() const;
};

IntMatrix merge_matrix(const SaddleCoefficients& k);
IntMatrix split_matrix(const SaddleCoefficients& k);

// The four elementary saddles. Merge inputs and split outputs are ordered
// (first, second) as documented in saddle_map; all are read in the frame of
// the named arcs.
struct SaddleMaps {
  Ring ring = Ring::Graded;
  IntMatrix zip_merge, zip_split, unzip_merge, unzip_split;
};

SaddleMaps saddle_maps(const SaddleCoefficients& k, Ring ring);

// Local relations the saddles must satisfy; rho is dual_point_matrix.
struct LocalRelations {
  bool bigon = false;       // unzip_split o zip_merge = id(x)rho - rho(x)id
  bool four_term = false;   // zip_merge o unzip_split = -2 rho, unzip_merge o zip_split = 2 rho
  bool point_sign = false;  // a dot slides through a membrane with a sign flip
  bool all() const { return bigon && four_term && point_sign; }
};

LocalRelations check_local_relations(const SaddleMaps& m);

// A(x)A = A + A through the saddles (graded ring): e_i = b_i a_i are
// orthogonal idempotents with e1 + e2 = id and a_i b_i = id on A.
//   a1 = unzip_merge            b1 = (X(x)1) zip_split
//   a2 = zip_merge (X(x)1)      b2 = -unzip_split
struct IdempotentSplit {
  IntMatrix a1, b1, a2, b2, e1, e2;
};
IdempotentSplit idempotent_split(const SaddleMaps& m);

struct SquareStats {
  std::size_t squares = 0;
  std::size_t failures = 0;
};

// Sign relating the two saddle composites around a square, from the circle
// counts at its four corners (base, either single step, both steps): -1 when
// both single steps split the same circle, +1 otherwise.
int square_obstruction(int base, int first, int second, int both);

// Untwisted squares of the cube: the two saddle composites must agree up to
// square_obstruction.
SquareStats untwisted_square_check(const LinkDiagram& d, const SaddleMaps& m);

// Small diagrams whose squares pin relation (iii) in the solver.
std::vector<LinkDiagram> square_test_diagrams();

// The symmetry orbit: global sign and exchange of the two strands.
std::vector<SaddleCoefficients> symmetry_orbit(const SaddleCoefficients& k);

struct SolverReport {
  Ring ring = Ring::Graded;
  int range = 2;
  std::size_t examined = 0;
  std::vector<SaddleCoefficients> solutions;
  std::vector<std::vector<SaddleCoefficients>> classes;
  SaddleCoefficients chosen;
};

// Exhaustive search over [-range, range]; widens the range up to 4 when empty.
SolverReport solve_saddle_coefficients(Ring ring, int range = 2);

// Solver result for the ring, computed once.
const SolverReport& solved_saddles(Ring ring);

// One side of a local map: the named arcs select and frame the circle
// factors the local matrix acts on (low bit = first arc).
struct LocalFrame {
  const LinkDiagram* diagram;
  const ResolvedGraph* graph;
  std::vector<ArcId> arcs;
};

// Applies `local` to the selected factors and carries the other circles
// along `carried` (source circle, target circle). Entries are scaled by
// `scale` and written at the given offsets.
void local_map_triplets(const LocalFrame& src, const LocalFrame& dst,
                        const std::vector<std::pair<int, int>>& carried, const IntMatrix& local,
                        std::size_t row_offset, std::size_t col_offset, std::int64_t scale,
                        std::vector<Triplet>& out);

// Saddle map of a cube edge on the tensor bases of the two resolutions.
// Zip (positive crossing): merge takes (right_in circle, left_in circle) to
// the right_in circle; split takes the right_in circle to (right_in circle,
// right_out circle). Unzip (negative crossing): merge takes (right_in,
// right_out) circles to the right_in circle; split takes the right_in circle
// to (right_in circle, left_in circle). Each circle factor is read at the
// named arc, conjugated when the traversal runs against that arc.
void saddle_triplets(const LinkDiagram& d, const EdgeTransition& t, const ResolvedGraph& g0,
                     const ResolvedGraph& g1, const SaddleMaps& m, std::size_t row_offset,
                     std::size_t col_offset, std::int64_t scale, std::vector<Triplet>& out);

SparseMatrix saddle_map(const LinkDiagram& d, const EdgeTransition& t, const ResolvedGraph& g0,
                        const ResolvedGraph& g1, const SaddleMaps& m);

}  // namespace okh
