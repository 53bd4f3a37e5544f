#include "okh/sparse.hpp"

#include <algorithm>
#include <stdexcept>

#include "okh/checked.hpp"

namespace okh {

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> t) {
  std::sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
  SparseMatrix m(rows, cols);
  std::size_t i = 0;
  for (std::size_t j = 0; j < cols; ++j) {
    while (i < t.size() && t[i].col == j) {
      if (t[i].row >= rows) throw std::out_of_range("triplet row out of range");
      std::size_t r = t[i].row;
      std::int64_t v = 0;
      while (i < t.size() && t[i].col == j && t[i].row == r) v = add_checked(v, t[i++].value);
      if (v != 0) {
        m.row_idx_.push_back(r);
        m.values_.push_back(v);
      }
    }
    m.col_ptr_[j + 1] = m.values_.size();
  }
  if (i != t.size()) throw std::out_of_range("triplet column out of range");
  return m;
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < n; ++i) t.push_back({i, i, 1});
  return from_triplets(n, n, std::move(t));
}

SparseMatrix SparseMatrix::from_dense(const IntMatrix& d) {
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (d(i, j) != 0) t.push_back({i, j, d(i, j)});
  return from_triplets(d.rows(), d.cols(), std::move(t));
}

std::int64_t SparseMatrix::at(std::size_t i, std::size_t j) const {
  auto b = row_idx_.begin() + static_cast<std::ptrdiff_t>(col_ptr_[j]);
  auto e = row_idx_.begin() + static_cast<std::ptrdiff_t>(col_ptr_[j + 1]);
  auto it = std::lower_bound(b, e, i);
  if (it == e || *it != i) return 0;
  return values_[static_cast<std::size_t>(it - row_idx_.begin())];
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("sparse shape mismatch in product");
  SparseMatrix r(rows_, o.cols_);
  std::vector<std::int64_t> acc(rows_, 0);
  std::vector<char> mark(rows_, 0);
  std::vector<std::size_t> touched;
  for (std::size_t j = 0; j < o.cols_; ++j) {
    touched.clear();
    for (std::size_t p = o.col_ptr_[j]; p < o.col_ptr_[j + 1]; ++p) {
      std::size_t k = o.row_idx_[p];
      std::int64_t b = o.values_[p];
      for (std::size_t q = col_ptr_[k]; q < col_ptr_[k + 1]; ++q) {
        std::size_t i = row_idx_[q];
        if (!mark[i]) {
          mark[i] = 1;
          touched.push_back(i);
        }
        acc[i] = add_checked(acc[i], mul_checked(values_[q], b));
      }
    }
    std::sort(touched.begin(), touched.end());
    for (std::size_t i : touched) {
      if (acc[i] != 0) {
        r.row_idx_.push_back(i);
        r.values_.push_back(acc[i]);
      }
      acc[i] = 0;
      mark[i] = 0;
    }
    r.col_ptr_[j + 1] = r.values_.size();
  }
  return r;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("sparse shape mismatch in sum");
  auto t = triplets();
  auto u = o.triplets();
  t.insert(t.end(), u.begin(), u.end());
  return from_triplets(rows_, cols_, std::move(t));
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& o) const { return *this + (-o); }

SparseMatrix SparseMatrix::operator-() const {
  SparseMatrix r = *this;
  for (auto& v : r.values_) v = mul_checked(v, -1);
  return r;
}

SparseMatrix SparseMatrix::transpose() const {
  auto t = triplets();
  for (auto& x : t) std::swap(x.row, x.col);
  return from_triplets(cols_, rows_, std::move(t));
}

SparseMatrix SparseMatrix::submatrix(const std::vector<std::size_t>& rows,
                                     const std::vector<std::size_t>& cols) const {
  std::vector<std::size_t> row_pos(rows_, static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < rows.size(); ++i) row_pos[rows[i]] = i;
  std::vector<Triplet> t;
  for (std::size_t jj = 0; jj < cols.size(); ++jj) {
    std::size_t j = cols[jj];
    for (std::size_t p = col_ptr_[j]; p < col_ptr_[j + 1]; ++p) {
      std::size_t ii = row_pos[row_idx_[p]];
      if (ii != static_cast<std::size_t>(-1)) t.push_back({ii, jj, values_[p]});
    }
  }
  return from_triplets(rows.size(), cols.size(), std::move(t));
}

std::vector<Triplet> SparseMatrix::triplets() const {
  std::vector<Triplet> t;
  t.reserve(values_.size());
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t p = col_ptr_[j]; p < col_ptr_[j + 1]; ++p) t.push_back({row_idx_[p], j, values_[p]});
  return t;
}

IntMatrix SparseMatrix::to_dense() const {
  IntMatrix m(rows_, cols_);
  for (const auto& t : triplets()) m(t.row, t.col) = t.value;
  return m;
}

}  // namespace okh
