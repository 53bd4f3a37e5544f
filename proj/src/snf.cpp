#include "okh/snf.hpp"

#include <algorithm>

#include "okh/checked.hpp"

namespace okh {

BigMatrix BigMatrix::identity(std::size_t n) {
  BigMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

BigMatrix BigMatrix::from(const IntMatrix& m) {
  BigMatrix b(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) b(i, j) = m(i, j);
  return b;
}

BigMatrix BigMatrix::operator*(const BigMatrix& o) const {
  if (cols != o.rows) throw std::invalid_argument("BigMatrix shape mismatch");
  BigMatrix r(rows, o.cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k) {
      if ((*this)(i, k) == 0) continue;
      for (std::size_t j = 0; j < o.cols; ++j) r(i, j) += (*this)(i, k) * o(k, j);
    }
  return r;
}

BigInt determinant(const BigMatrix& m) {
  if (m.rows != m.cols) throw std::invalid_argument("determinant of a non-square matrix");
  std::size_t n = m.rows;
  if (n == 0) return 1;
  BigMatrix a = m;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

namespace {

BigInt magnitude(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

struct Dense {
  BigMatrix a;
  std::optional<BigMatrix> u, v;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < a.cols; ++k) std::swap(a(i, k), a(j, k));
    if (u)
      for (std::size_t k = 0; k < u->cols; ++k) std::swap((*u)(i, k), (*u)(j, k));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < a.rows; ++k) std::swap(a(k, i), a(k, j));
    if (v)
      for (std::size_t k = 0; k < v->rows; ++k) std::swap((*v)(k, i), (*v)(k, j));
  }
  // row i += q * row j
  void add_row(std::size_t i, std::size_t j, const BigInt& q) {
    for (std::size_t k = 0; k < a.cols; ++k)
      if (a(j, k) != 0) a(i, k) += q * a(j, k);
    if (u)
      for (std::size_t k = 0; k < u->cols; ++k)
        if ((*u)(j, k) != 0) (*u)(i, k) += q * (*u)(j, k);
  }
  // col i += q * col j
  void add_col(std::size_t i, std::size_t j, const BigInt& q) {
    for (std::size_t k = 0; k < a.rows; ++k)
      if (a(k, j) != 0) a(k, i) += q * a(k, j);
    if (v)
      for (std::size_t k = 0; k < v->rows; ++k)
        if ((*v)(k, j) != 0) (*v)(k, i) += q * (*v)(k, j);
  }
  void negate_row(std::size_t i) {
    for (std::size_t k = 0; k < a.cols; ++k) a(i, k) = -a(i, k);
    if (u)
      for (std::size_t k = 0; k < u->cols; ++k) (*u)(i, k) = -(*u)(i, k);
  }

  std::vector<BigInt> run() {
    std::vector<BigInt> factors;
    std::size_t n = std::min(a.rows, a.cols);
    for (std::size_t t = 0; t < n; ++t) {
      for (;;) {
        std::size_t pi = a.rows, pj = a.cols;
        BigInt best;
        for (std::size_t i = t; i < a.rows; ++i)
          for (std::size_t j = t; j < a.cols; ++j) {
            if (a(i, j) == 0) continue;
            BigInt m = magnitude(a(i, j));
            if (pi == a.rows || m < best) {
              best = m;
              pi = i;
              pj = j;
              if (best == 1) goto found;
            }
          }
      found:
        if (pi == a.rows) return factors;
        swap_rows(t, pi);
        swap_cols(t, pj);
        bool clean = true;
        for (std::size_t i = t + 1; i < a.rows; ++i) {
          if (a(i, t) == 0) continue;
          add_row(i, t, -(a(i, t) / a(t, t)));
          if (a(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < a.cols; ++j) {
          if (a(t, j) == 0) continue;
          add_col(j, t, -(a(t, j) / a(t, t)));
          if (a(t, j) != 0) clean = false;
        }
        if (!clean) continue;
        std::size_t bad = a.rows;
        for (std::size_t i = t + 1; i < a.rows && bad == a.rows; ++i)
          for (std::size_t j = t + 1; j < a.cols; ++j)
            if (a(i, j) % a(t, t) != 0) {
              bad = i;
              break;
            }
        if (bad == a.rows) break;
        add_row(t, bad, 1);
      }
      if (a(t, t) < 0) negate_row(t);
      factors.push_back(a(t, t));
    }
    return factors;
  }
};

std::int64_t mul_sub(std::int64_t x, std::int64_t f, std::int64_t y) { return add_checked(x, -mul_checked(f, y)); }
BigInt mul_sub(const BigInt& x, const BigInt& f, const BigInt& y) { return x - f * y; }
bool is_unit(std::int64_t x) { return x == 1 || x == -1; }
bool is_unit(const BigInt& x) { return x == 1 || x == -1; }

template <class T>
struct Sparse {
  using Row = std::vector<std::pair<std::size_t, T>>;
  std::vector<Row> rows;
  std::vector<std::vector<std::size_t>> cols;
  std::vector<char> row_dead, col_dead;

  explicit Sparse(const SparseMatrix& m) : rows(m.rows()), cols(m.cols()), row_dead(m.rows(), 0), col_dead(m.cols(), 0) {
    const auto& cp = m.col_ptr();
    const auto& ri = m.row_index();
    const auto& vs = m.values();
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (std::size_t k = cp[j]; k < cp[j + 1]; ++k) {
        rows[ri[k]].push_back({j, T(vs[k])});
        cols[j].push_back(ri[k]);
      }
  }

  const T* find(std::size_t i, std::size_t j) const {
    const Row& r = rows[i];
    auto it = std::lower_bound(r.begin(), r.end(), j, [](const auto& e, std::size_t c) { return e.first < c; });
    return it != r.end() && it->first == j ? &it->second : nullptr;
  }

  void clean(std::size_t j) {
    auto& c = cols[j];
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    c.erase(std::remove_if(c.begin(), c.end(), [&](std::size_t i) { return row_dead[i] || !find(i, j); }), c.end());
  }

  void pivot(std::size_t p, std::size_t j) {
    const Row& pr = rows[p];
    T u = *find(p, j);
    for (std::size_t i : cols[j]) {
      if (i == p) continue;
      T f = *find(i, j) * u;
      Row out;
      out.reserve(rows[i].size() + pr.size());
      auto a = rows[i].begin(), ae = rows[i].end();
      auto b = pr.begin(), be = pr.end();
      while (a != ae || b != be) {
        if (b == be || (a != ae && a->first < b->first)) {
          out.push_back(*a++);
        } else if (a == ae || b->first < a->first) {
          T v = mul_sub(T(0), f, b->second);
          if (v != 0) {
            out.push_back({b->first, v});
            cols[b->first].push_back(i);
          }
          ++b;
        } else {
          T v = mul_sub(a->second, f, b->second);
          if (v != 0) out.push_back({a->first, v});
          ++a;
          ++b;
        }
      }
      rows[i] = std::move(out);
    }
    row_dead[p] = 1;
    col_dead[j] = 1;
    cols[j].clear();
  }

  std::vector<BigInt> run() {
    std::size_t pivots = 0;
    for (bool changed = true; changed;) {
      changed = false;
      std::vector<std::size_t> order;
      for (std::size_t j = 0; j < cols.size(); ++j)
        if (!col_dead[j]) {
          clean(j);
          if (cols[j].empty()) {
            col_dead[j] = 1;
          } else {
            order.push_back(j);
          }
        }
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t x, std::size_t y) { return cols[x].size() < cols[y].size(); });
      for (std::size_t j : order) {
        if (col_dead[j]) continue;
        clean(j);
        std::size_t best = rows.size();
        for (std::size_t i : cols[j])
          if (is_unit(*find(i, j)) && (best == rows.size() || rows[i].size() < rows[best].size())) best = i;
        if (best == rows.size()) continue;
        pivot(best, j);
        ++pivots;
        changed = true;
      }
    }
    std::vector<std::size_t> live_rows, live_cols;
    std::vector<std::size_t> col_pos(cols.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (row_dead[i] || rows[i].empty()) continue;
      live_rows.push_back(i);
      for (const auto& e : rows[i])
        if (col_pos[e.first] == cols.size()) {
          col_pos[e.first] = live_cols.size();
          live_cols.push_back(e.first);
        }
    }
    BigMatrix rest(live_rows.size(), live_cols.size());
    for (std::size_t r = 0; r < live_rows.size(); ++r)
      for (const auto& e : rows[live_rows[r]]) rest(r, col_pos[e.first]) = BigInt(e.second);
    std::vector<BigInt> out(pivots, BigInt(1));
    for (auto& f : smith_normal_form(rest).factors) out.push_back(f);
    return out;
  }
};

}  // namespace

SNFResult smith_normal_form(const BigMatrix& m, bool transforms) {
  Dense d{m, std::nullopt, std::nullopt};
  if (transforms) {
    d.u = BigMatrix::identity(m.rows);
    d.v = BigMatrix::identity(m.cols);
  }
  SNFResult r;
  r.rows = m.rows;
  r.cols = m.cols;
  r.factors = d.run();
  if (transforms) {
    r.U = std::move(d.u);
    r.V = std::move(d.v);
  }
  return r;
}

SNFResult smith_normal_form(const IntMatrix& m, bool transforms) {
  return smith_normal_form(BigMatrix::from(m), transforms);
}

std::vector<BigInt> invariant_factors(const SparseMatrix& m) {
  try {
    return Sparse<std::int64_t>(m).run();
  } catch (const OverflowError&) {
    return Sparse<BigInt>(m).run();
  }
}

std::size_t matrix_rank(const SparseMatrix& m) { return invariant_factors(m).size(); }

}  // namespace okh
