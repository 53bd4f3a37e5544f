#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "okh/complex.hpp"
#include "okh/laurent.hpp"

namespace okh {

struct HomologyGroup {
  std::size_t free = 0;
  std::vector<std::int64_t> torsion;  // invariant factors > 1
  bool operator==(const HomologyGroup&) const = default;
  bool zero() const { return free == 0 && torsion.empty(); }
};

// Graded ring: `table` keyed by (height, q). Lee ring: `by_height` over
// Z[1/2] (powers of 2 stripped from torsion), no q-grading.
struct BigradedHomology {
  Ring ring = Ring::Graded;
  std::map<std::pair<int, int>, HomologyGroup> table;
  std::map<int, HomologyGroup> by_height;

  std::size_t total_free() const;
  bool has_torsion() const;
  bool operator==(const BigradedHomology& o) const { return ring == o.ring && table == o.table && by_height == o.by_height; }
  // Sum of t^h q^k over free generators, e.g. "q^1 + q^-1" or "t^2*q^-5 + ...".
  std::string poincare() const;
  nlohmann::json to_json() const;
};

// Throws VerificationError when d^2 != 0.
BigradedHomology homology(const ChainComplex& K, int jobs = 0);

LaurentPoly graded_euler_characteristic(const ChainComplex& K);
LaurentPoly graded_euler_characteristic(const BigradedHomology& H);

BigradedHomology khovanov_homology(const LinkDiagram& d, int jobs = 0);
BigradedHomology lee_homology(const LinkDiagram& d, int jobs = 0);

// Cycle of the Lee complex attached to a sign map on components.
struct CanonicalClass {
  std::vector<int> epsilon;  // one sign per component, in LinkDiagram::components order
  State state;
  int height = 0;
  std::vector<std::pair<std::size_t, std::int64_t>> chain;  // basis index in the height group, coefficient
  bool cycle = false;
};

struct CanonicalReport {
  std::vector<CanonicalClass> classes;
  bool all_cycles = true;
  bool independent = true;  // over Q, modulo boundaries, per height
  std::string to_string() const;
};

// Each crossing is resolved 0 where its strands carry equal signs and at the
// double edge otherwise; each circle carries 1 + eps X read at its reference arc.
CanonicalReport lee_canonical_classes(const LinkDiagram& d, const ChainComplex* lee = nullptr);

struct SpectralReport {
  std::map<std::pair<int, int>, std::size_t> e2_raw;        // (height, q) -> free rank
  std::map<std::pair<int, int>, std::size_t> e2_reindexed;  // (i, j) = (height + q, q)
  std::size_t e2_total = 0;
  std::size_t einf_total = 0;
  std::size_t deficit = 0;
  bool consistent = false;  // e2_total >= einf_total with even difference
  std::string to_string() const;
};
SpectralReport spectral_sequence_report(const BigradedHomology& kh, const BigradedHomology& lee);

}  // namespace okh
