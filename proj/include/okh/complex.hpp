#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "okh/algebra.hpp"
#include "okh/diagram.hpp"
#include "okh/moves.hpp"
#include "okh/resolution.hpp"
#include "okh/saddle.hpp"
#include "okh/sparse.hpp"

namespace okh {

struct Summand {
  State state;
  ResolvedGraph graph;
  int height = 0;
  int q_shift = 0;               // -(writhe + height)
  std::vector<int> twist_basis;  // crossings with |s(c)| = 1, ascending
  std::vector<int> cube_sign;    // per crossing; 0 where the crossing cannot be raised
  std::size_t offset = 0;        // first basis index inside its height group

  int circles() const { return graph.circle_count(); }
  std::uint64_t rank() const { return std::uint64_t{1} << circles(); }
  // q-degree of a basis word: #1 - #X plus the shift.
  int qdeg(std::uint64_t word) const;
};

// Flips the sign of one cube edge, used to test that verification notices.
struct FaultInjection {
  State state;
  int crossing = -1;
};

struct BuildOptions {
  const SaddleMaps* saddles = nullptr;  // defaults to the solved maps of the ring
  std::optional<FaultInjection> fault;
  int jobs = 0;
};

struct ChainComplex {
  Ring ring = Ring::Graded;
  LinkDiagram diagram;
  SaddleMaps saddles;
  std::optional<FaultInjection> fault;
  std::map<int, std::vector<Summand>> groups;  // by height, states in lexicographic order
  std::map<int, SparseMatrix> differential;    // d_h : C_h -> C_{h+1}, for h in [min, max)
  std::map<State, std::pair<int, std::size_t>> index;  // state -> (height, position in group)

  int min_height() const { return groups.begin()->first; }
  int max_height() const { return groups.rbegin()->first; }
  std::size_t rank(int h) const;
  std::size_t total_rank() const;
  const Summand& summand(const State& s) const;
  // Per-basis q-degrees of the height-h group.
  std::vector<int> qdegrees(int h) const;
  // d_h, or an empty matrix of the right shape outside the stored range.
  SparseMatrix d(int h) const;
};

// Sign and resulting basis when crossing c changes at a summand: wedging c on
// the right at a positive crossing, contracting it on the right at a
// negative one. Both give (-1)^{#{c' in basis : c' > c}}.
struct TwistStep {
  int sign = 1;
  std::vector<int> basis;
};
TwistStep twist_sign(const std::vector<int>& basis, int c, bool wedge);
TwistStep twist_sign(const Summand& s, const LinkDiagram& d, int c);

// Default saddle maps of the ring: the solver's class, disambiguated by the
// R1 identities when the solver leaves more than one class.
const SaddleMaps& default_saddle_maps(Ring ring);

ChainComplex build_complex(const LinkDiagram& d, Ring ring, const BuildOptions& opts = {});

// Cube edge leaving state s at crossing c: the saddle map times the cube
// sign, and the twist sign (flipped by a fault) kept apart.
struct EdgeBlock {
  State target;
  int sign = 1;
  SparseMatrix matrix;
};
EdgeBlock edge_block(const ChainComplex& K, const State& s, int c);

// Part of d_h coming from edges at a single crossing.
SparseMatrix partial_differential(const ChainComplex& K, int h, int crossing);

struct SquareFault {
  State state;
  int c1 = -1, c2 = -1;
};

struct DSquaredReport {
  bool ok = true;
  std::size_t compositions = 0;    // consecutive pairs checked
  std::size_t nonzero_entries = 0;
  std::vector<SquareFault> faults;  // squares whose twisted composites do not cancel
  std::string to_string() const;
};
DSquaredReport verify_d_squared(const ChainComplex& K);

// Every 2-crossing square: composites of the cube-signed saddles agree, and
// cancel once the twist signs are applied.
struct SquareReport {
  std::size_t squares = 0;
  std::size_t untwisted_failures = 0;
  std::size_t twisted_failures = 0;
  bool ok() const { return untwisted_failures == 0 && twisted_failures == 0; }
};
SquareReport square_report(const ChainComplex& K);

// Graded ring: every differential entry joins equal q-degrees.
bool q_homogeneous(const ChainComplex& K);

nlohmann::json complex_to_json(const ChainComplex& K);
std::string complex_to_text(const ChainComplex& K);

// R1 chain maps between the curl diagram D and the reduced diagram D'.
// Local coefficient triples, acting on (strand, loop) factors:
//   positive curl  f: 1(x)1->1, 1(x)X->X, X(x)1->X   g: 1->1(x)1, X->1(x)X, X->X(x)1
//                  D: 1->1(x)X, 1->X(x)1, X->X(x)X   (curl1 -> curl0)
//   negative curl  f: 1(x)X->1, X(x)1->1, X(x)X->X   g: 1->1(x)X, 1->X(x)1, X->X(x)X
//                  D: 1(x)1->1, 1(x)X->X, X(x)1->X   (curl0 -> curl1)
// curl0 is the oriented smoothing of the curl crossing, curl1 the double edge.
struct R1Coefficients {
  std::array<std::int64_t, 3> f{}, g{}, homotopy{};
  bool operator==(const R1Coefficients&) const = default;
  auto operator<=>(const R1Coefficients&) const = default;
  std::string to_string() const;
};

struct R1Maps {
  CurlSite site;
  ArcId merged = 0;  // strand arc of D'
  R1Coefficients coefficients;
  ChainComplex curl, reduced;
  std::map<int, SparseMatrix> f;         // K(D)_h -> K(D')_h
  std::map<int, SparseMatrix> g;         // K(D')_h -> K(D)_h
  std::map<int, SparseMatrix> homotopy;  // K(D)_h -> K(D)_{h-1}
};

struct R1Identities {
  bool f_chain = false, g_chain = false;
  bool f_after_g = false;    // f g = Id
  bool homotopy = false;     // Id - g f = D d + d D
  bool local_zero = false;   // positive: d_x g = 0; negative: f d_x = 0
  bool local_inverse = false;  // positive: d_x D = Id on curl1; negative: D d_x = Id on curl1
  bool local_homotopy = false;  // positive: Id - g f = D d_x; negative: Id - g f = d_x D
  bool graded = false;       // f, g, D preserve q
  bool all() const;
  std::string to_string() const;
};

// Builds f, g, D from explicit coefficients. Throws ValidationError when the
// crossing carries no curl. The curl crossing is moved to the end of the
// crossing list first, so `curl` is built on that reordered diagram.
R1Maps build_r1_maps(const LinkDiagram& d, int crossing, const R1Coefficients& k,
                     const SaddleMaps* saddles = nullptr);
R1Identities check_r1_identities(const R1Maps& m);

// All coefficient triples in [-range, range] satisfying the identities.
std::vector<R1Coefficients> solve_r1_coefficients(const LinkDiagram& d, int crossing,
                                                  const SaddleMaps* saddles = nullptr,
                                                  int range = 2);

// True when f (positive curl) or g (negative curl) is the identity on the
// strand tensored with a map on the loop.
bool loop_local(const R1Coefficients& k, int sign);

// Solves on the bare curl of the same sign, then tries those solutions (with
// D of either sign) on d, falling back to a search on d itself. Among solutions, loop-local ones are
// preferred, then the lexicographically greatest. Graded ring. Throws SolverError when
// the identities cannot be met.
R1Maps r1_chain_maps(const LinkDiagram& d, int crossing);

}  // namespace okh
