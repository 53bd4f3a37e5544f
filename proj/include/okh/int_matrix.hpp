#pragma once

#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "okh/checked.hpp"

namespace okh {

// Small dense integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    for (const auto& r : init) {
      if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntMatrix operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
    IntMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        std::int64_t a = (*this)(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          r(i, j) = add_checked(r(i, j), mul_checked(a, o(k, j)));
      }
    return r;
  }
  IntMatrix operator+(const IntMatrix& o) const { return combine(o, 1); }
  IntMatrix operator-(const IntMatrix& o) const { return combine(o, -1); }
  IntMatrix operator-() const { return scaled(-1); }
  IntMatrix scaled(std::int64_t s) const {
    IntMatrix r = *this;
    for (auto& v : r.data_) v = mul_checked(v, s);
    return r;
  }
  bool operator==(const IntMatrix& o) const = default;

  bool is_zero() const {
    for (auto v : data_)
      if (v != 0) return false;
    return true;
  }

  IntMatrix transpose() const {
    IntMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

 private:
  IntMatrix combine(const IntMatrix& o, std::int64_t s) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
    IntMatrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = add_checked(r.data_[i], mul_checked(s, o.data_[i]));
    return r;
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::int64_t> data_;
};

// Tensor product on basis words: `low` acts on the low-order index digits.
// Row index of the result is low_row + low.rows() * high_row.
inline IntMatrix tensor(const IntMatrix& low, const IntMatrix& high) {
  IntMatrix r(low.rows() * high.rows(), low.cols() * high.cols());
  for (std::size_t i1 = 0; i1 < high.rows(); ++i1)
    for (std::size_t j1 = 0; j1 < high.cols(); ++j1) {
      std::int64_t h = high(i1, j1);
      if (h == 0) continue;
      for (std::size_t i0 = 0; i0 < low.rows(); ++i0)
        for (std::size_t j0 = 0; j0 < low.cols(); ++j0)
          r(i0 + low.rows() * i1, j0 + low.cols() * j1) = mul_checked(low(i0, j0), h);
    }
  return r;
}

inline std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
  }
  return os << ']';
}

}  // namespace okh
