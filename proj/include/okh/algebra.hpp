#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "okh/int_matrix.hpp"

namespace okh {

// Graded: Z[X]/X^2. Lee: Z[X]/(X^2 - 1).
enum class Ring { Graded, Lee };

std::string ring_name(Ring r);

struct RingMismatch : std::invalid_argument {
  RingMismatch() : std::invalid_argument("ring tags differ") {}
};

// one * 1 + x * X
struct AlgebraElement {
  Ring ring = Ring::Graded;
  std::int64_t one = 0;
  std::int64_t x = 0;

  bool operator==(const AlgebraElement&) const = default;
};

AlgebraElement unit(Ring r);
AlgebraElement generator(Ring r);
AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator*(std::int64_t s, const AlgebraElement& a);
AlgebraElement mult(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement point(const AlgebraElement& a);
AlgebraElement conjugate(const AlgebraElement& a);
std::int64_t counit(const AlgebraElement& a);
// counit(a * conjugate(b))
std::int64_t pairing(const AlgebraElement& a, const AlgebraElement& b);

// Element of A^{(x)k}: word bit i set means X on factor i.
class TensorVector {
 public:
  TensorVector(Ring ring, int arity) : ring_(ring), arity_(arity) {}

  static TensorVector basis(Ring ring, int arity, std::uint64_t word);
  static TensorVector from(const AlgebraElement& a);

  Ring ring() const { return ring_; }
  int arity() const { return arity_; }
  const std::map<std::uint64_t, std::int64_t>& terms() const { return terms_; }

  void add(std::uint64_t word, std::int64_t coeff);
  std::int64_t coefficient(std::uint64_t word) const;

  // this (x) other; the factors of `other` follow those of this.
  TensorVector tensor(const TensorVector& other) const;
  // Applies a matrix on the 2^arity word basis.
  TensorVector apply(const IntMatrix& m, int out_arity) const;

  bool operator==(const TensorVector& o) const {
    return ring_ == o.ring_ && arity_ == o.arity_ && terms_ == o.terms_;
  }
  std::string to_string() const;

 private:
  Ring ring_;
  int arity_;
  std::map<std::uint64_t, std::int64_t> terms_;
};

TensorVector comult(const AlgebraElement& a);

// Degree of a basis word in the graded ring: #1 - #X.
int word_degree(std::uint64_t word, int arity);

// Structure maps as matrices on the basis (1, X); tensor words use
// low bit = first factor.
IntMatrix mult_matrix(Ring r);        // 2x4
IntMatrix comult_matrix(Ring r);      // 4x2, derived from the Frobenius form
IntMatrix counit_matrix(Ring r);      // 1x2
IntMatrix unit_matrix(Ring r);        // 2x1
IntMatrix point_matrix(Ring r);       // multiplication by X
IntMatrix conj_matrix();              // diag(1, -1)
IntMatrix frobenius_form(Ring r);     // counit(e_i e_j)
IntMatrix pairing_matrix(Ring r);     // counit(e_i conj(e_j))
IntMatrix duality_matrix(Ring r);     // x -> sum_i form(x, e_i) e_i
// The dot carried through the duality: phi o point o phi^{-1}.
IntMatrix dual_point_matrix(Ring r);
// Neck cutting, x -> 1 eps(X x) + X eps(x); equals the identity.
IntMatrix surgery_matrix(Ring r);

}  // namespace okh
