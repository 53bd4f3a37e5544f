#pragma once

#include <cstdint>
#include <vector>

#include "okh/int_matrix.hpp"

namespace okh {

struct Triplet {
  std::size_t row, col;
  std::int64_t value;
};

// Compressed-column integer matrix. Entries are kept sorted by row within
// each column and zeros are never stored.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), col_ptr_(cols + 1, 0) {}

  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> t);
  static SparseMatrix identity(std::size_t n);
  static SparseMatrix from_dense(const IntMatrix& m);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return values_.size(); }

  const std::vector<std::size_t>& col_ptr() const { return col_ptr_; }
  const std::vector<std::size_t>& row_index() const { return row_idx_; }
  const std::vector<std::int64_t>& values() const { return values_; }

  std::int64_t at(std::size_t i, std::size_t j) const;

  SparseMatrix operator*(const SparseMatrix& o) const;
  SparseMatrix operator+(const SparseMatrix& o) const;
  SparseMatrix operator-(const SparseMatrix& o) const;
  SparseMatrix operator-() const;
  SparseMatrix transpose() const;
  SparseMatrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;

  bool is_zero() const { return values_.empty(); }
  bool operator==(const SparseMatrix& o) const = default;

  std::vector<Triplet> triplets() const;
  IntMatrix to_dense() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::size_t> col_ptr_{0};
  std::vector<std::size_t> row_idx_;
  std::vector<std::int64_t> values_;
};

}  // namespace okh
