// Independent reference implementations used only by the tests. None of them
// call into the library's resolution, complex, homology or SNF code.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Big = boost::multiprecision::cpp_int;
using Dense = std::vector<std::vector<Big>>;

Dense random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int range);

// Elementary row and column operations until the matrix is diagonal with each
// entry dividing the next. u * m * v == d.
struct Snf {
  Dense u, v, d;
  std::vector<Big> factors;  // nonzero diagonal, non-negative
};
Snf naive_snf(const Dense& m);

Dense multiply(const Dense& a, const Dense& b);
Big det(const Dense& m);

// d_k = gcd of all k x k minors; invariant factors are d_k / d_{k-1}.
std::vector<Big> determinantal_factors(const Dense& m);

// Sign of the permutation sorting `seq` (entries distinct).
int sort_sign(std::vector<int> seq);

// Right wedge e_basis ^ e_c and right contraction of e_c from e_basis,
// in the exterior algebra on crossings; 0 when the result vanishes.
int wedge_sign(const std::vector<int>& basis, int c);
int contract_sign(const std::vector<int>& basis, int c);

// A crossing given by its four arcs (counterclockwise from the incoming
// under-strand) and its sign.
struct PdCrossing {
  std::array<std::int64_t, 4> arcs;
  int sign;
};

// Circles of the smoothing where crossing i takes the oriented smoothing
// when oriented[i] is true and the other one otherwise; loops counted extra.
int circle_count(const std::vector<PdCrossing>& x, const std::vector<bool>& oriented, int loops);

// Classical Khovanov homology (merge m, comultiplication Delta, signs from the
// number of 1-smoothings before the changed crossing), with the usual
// [-n_-]{n_+ - 2n_-} shift. Keys (height, q).
struct Group {
  std::size_t free = 0;
  std::vector<std::int64_t> torsion;
  bool operator==(const Group&) const = default;
};
std::map<std::pair<int, int>, Group> classical_khovanov(const std::vector<PdCrossing>& x, int loops);

// Unnormalised Jones polynomial from the same state sum, as exponent -> coefficient.
std::map<int, std::int64_t> classical_jones(const std::vector<PdCrossing>& x, int loops);

}  // namespace oracle
