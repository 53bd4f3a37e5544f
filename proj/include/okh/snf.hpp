#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "okh/int_matrix.hpp"
#include "okh/sparse.hpp"

namespace okh {

using BigInt = boost::multiprecision::cpp_int;

struct BigMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<BigInt> data;

  BigMatrix() = default;
  BigMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  static BigMatrix identity(std::size_t n);
  static BigMatrix from(const IntMatrix& m);

  BigInt& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  BigMatrix operator*(const BigMatrix& o) const;
  bool operator==(const BigMatrix& o) const = default;
};

// Exact determinant by fraction-free elimination.
BigInt determinant(const BigMatrix& m);

struct SNFResult {
  std::size_t rows = 0, cols = 0;
  std::vector<BigInt> factors;  // nonzero invariant factors, each dividing the next
  std::optional<BigMatrix> U, V;  // U * M * V = diag(factors), when requested

  std::size_t rank() const { return factors.size(); }
};

// Dense Smith normal form, smallest-magnitude pivoting.
SNFResult smith_normal_form(const BigMatrix& m, bool transforms = false);
SNFResult smith_normal_form(const IntMatrix& m, bool transforms = false);

// Invariant factors of a sparse matrix: unit pivots are eliminated first,
// the residual goes through the dense form. Falls back to big integers when
// 64-bit arithmetic overflows.
std::vector<BigInt> invariant_factors(const SparseMatrix& m);

std::size_t matrix_rank(const SparseMatrix& m);

}  // namespace okh
