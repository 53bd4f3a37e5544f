#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace oracle {

namespace {

Dense identity(std::size_t n) {
  Dense m(n, std::vector<Big>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Big abs_big(const Big& x) { return x < 0 ? Big(-x) : x; }

Big gcd_big(Big a, Big b) {
  a = abs_big(a);
  b = abs_big(b);
  while (b != 0) {
    Big r = a % b;
    a = b;
    b = r;
  }
  return a;
}

struct Ops {
  Dense& d;
  Dense& u;
  Dense& v;

  // row i += k * row j
  void add_row(std::size_t i, std::size_t j, const Big& k) {
    for (std::size_t c = 0; c < d[i].size(); ++c) d[i][c] += k * d[j][c];
    for (std::size_t c = 0; c < u[i].size(); ++c) u[i][c] += k * u[j][c];
  }
  void add_col(std::size_t i, std::size_t j, const Big& k) {
    for (auto& r : d) r[i] += k * r[j];
    for (auto& r : v) r[i] += k * r[j];
  }
  void swap_rows(std::size_t i, std::size_t j) {
    std::swap(d[i], d[j]);
    std::swap(u[i], u[j]);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    for (auto& r : d) std::swap(r[i], r[j]);
    for (auto& r : v) std::swap(r[i], r[j]);
  }
  void negate_row(std::size_t i) {
    for (auto& x : d[i]) x = -x;
    for (auto& x : u[i]) x = -x;
  }
};

}  // namespace

Dense random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int range) {
  std::uniform_int_distribution<int> val(-range, range);
  std::uniform_int_distribution<int> zero(0, 3);
  Dense m(rows, std::vector<Big>(cols, 0));
  for (auto& r : m)
    for (auto& x : r) x = zero(rng) == 0 ? 0 : val(rng);
  return m;
}

Snf naive_snf(const Dense& m) {
  Snf s;
  std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  s.d = m;
  s.u = identity(rows);
  s.v = identity(cols);
  Ops op{s.d, s.u, s.v};
  auto& d = s.d;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // smallest nonzero entry of the trailing block becomes the pivot
    bool found = false;
    std::size_t pi = t, pj = t;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (d[i][j] != 0 && (!found || abs_big(d[i][j]) < abs_big(d[pi][pj]))) {
          found = true;
          pi = i;
          pj = j;
        }
    if (!found) break;
    op.swap_rows(t, pi);
    op.swap_cols(t, pj);
    for (;;) {
      for (std::size_t i = t + 1; i < rows; ++i)
        if (d[i][t] != 0) op.add_row(i, t, -(d[i][t] / d[t][t]));
      for (std::size_t j = t + 1; j < cols; ++j)
        if (d[t][j] != 0) op.add_col(j, t, -(d[t][j] / d[t][t]));
      bool clean = true;
      std::size_t bi = t, bj = t;
      for (std::size_t i = t + 1; i < rows; ++i)
        if (d[i][t] != 0 && (clean || abs_big(d[i][t]) < abs_big(d[bi][bj]))) {
          clean = false;
          bi = i;
          bj = t;
        }
      for (std::size_t j = t + 1; j < cols; ++j)
        if (d[t][j] != 0 && (clean || abs_big(d[t][j]) < abs_big(d[bi][bj]))) {
          clean = false;
          bi = t;
          bj = j;
        }
      if (!clean) {
        op.swap_rows(t, bi);
        op.swap_cols(t, bj);
        continue;
      }
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (d[i][j] % d[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      op.add_row(t, bad, 1);
    }
    if (d[t][t] < 0) op.negate_row(t);
  }
  for (std::size_t t = 0; t < std::min(rows, cols); ++t)
    if (d[t][t] != 0) s.factors.push_back(d[t][t]);
  return s;
}

Dense multiply(const Dense& a, const Dense& b) {
  std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
  if (n && a[0].size() != k) throw std::invalid_argument("shape");
  Dense r(n, std::vector<Big>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      if (a[i][l] != 0)
        for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
  return r;
}

Big det(const Dense& m0) {
  // Bareiss
  Dense m = m0;
  std::size_t n = m.size();
  if (n == 0) return 1;
  int sign = 1;
  Big prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

std::vector<Big> determinantal_factors(const Dense& m) {
  std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::vector<Big> dk{1};
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    Big g = 0;
    std::vector<bool> rsel(rows, false), csel(cols, false);
    std::fill(rsel.begin(), rsel.begin() + static_cast<long>(k), true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.begin(), csel.begin() + static_cast<long>(k), true);
      do {
        Dense minor;
        for (std::size_t i = 0; i < rows; ++i) {
          if (!rsel[i]) continue;
          minor.emplace_back();
          for (std::size_t j = 0; j < cols; ++j)
            if (csel[j]) minor.back().push_back(m[i][j]);
        }
        g = gcd_big(g, det(minor));
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
    if (g == 0) break;
    dk.push_back(g);
  }
  std::vector<Big> out;
  for (std::size_t k = 1; k < dk.size(); ++k) out.push_back(dk[k] / dk[k - 1]);
  return out;
}

int sort_sign(std::vector<int> seq) {
  int swaps = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = 0; j + 1 < seq.size() - i; ++j)
      if (seq[j] > seq[j + 1]) {
        std::swap(seq[j], seq[j + 1]);
        ++swaps;
      }
  return swaps % 2 ? -1 : 1;
}

int wedge_sign(const std::vector<int>& basis, int c) {
  if (std::find(basis.begin(), basis.end(), c) != basis.end()) return 0;
  std::vector<int> seq = basis;
  seq.push_back(c);
  return sort_sign(seq);
}

int contract_sign(const std::vector<int>& basis, int c) {
  if (std::find(basis.begin(), basis.end(), c) == basis.end()) return 0;
  std::vector<int> rest;
  for (int b : basis)
    if (b != c) rest.push_back(b);
  // move e_c to the far right, then contract
  return wedge_sign(rest, c) * sort_sign(basis);
}

namespace {

struct Smoothing {
  std::map<std::int64_t, int> circle;  // arc -> circle index
  int count = 0;
};

std::int64_t find(std::map<std::int64_t, std::int64_t>& p, std::int64_t a) {
  while (p[a] != a) a = p[a] = p[p[a]];
  return a;
}

// 0-smoothing joins (a,b) and (c,d), the 1-smoothing (a,d) and (b,c).
Smoothing smooth(const std::vector<PdCrossing>& x, const std::vector<int>& r) {
  std::map<std::int64_t, std::int64_t> p;
  for (const auto& c : x)
    for (auto a : c.arcs) p[a] = a;
  auto join = [&](std::int64_t a, std::int64_t b) { p[find(p, a)] = find(p, b); };
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto& a = x[i].arcs;
    if (r[i] == 0) {
      join(a[0], a[1]);
      join(a[2], a[3]);
    } else {
      join(a[0], a[3]);
      join(a[1], a[2]);
    }
  }
  // circles numbered by smallest arc
  std::map<std::int64_t, int> root_index;
  Smoothing s;
  for (auto& [a, _] : p) {
    auto root = find(p, a);
    auto it = root_index.find(root);
    if (it == root_index.end()) it = root_index.emplace(root, s.count++).first;
    s.circle[a] = it->second;
  }
  return s;
}

// Classical state of a crossing for the oriented smoothing request.
int classical_value(const PdCrossing& c, bool oriented) {
  bool zero_is_oriented = c.sign > 0;
  return oriented == zero_is_oriented ? 0 : 1;
}

}  // namespace

int circle_count(const std::vector<PdCrossing>& x, const std::vector<bool>& oriented, int loops) {
  std::vector<int> r;
  for (std::size_t i = 0; i < x.size(); ++i) r.push_back(classical_value(x[i], oriented[i]));
  return smooth(x, r).count + loops;
}

namespace {

struct Generator {
  int state;
  std::uint32_t word;  // bit i set: v_- on circle i
};

}  // namespace

std::map<std::pair<int, int>, Group> classical_khovanov(const std::vector<PdCrossing>& x, int loops) {
  int n = static_cast<int>(x.size());
  int npos = 0, nneg = 0;
  for (const auto& c : x) (c.sign > 0 ? npos : nneg)++;
  int states = 1 << n;
  std::vector<Smoothing> sm(static_cast<std::size_t>(states));
  std::vector<std::vector<int>> rv(static_cast<std::size_t>(states));
  for (int s = 0; s < states; ++s) {
    for (int i = 0; i < n; ++i) rv[s].push_back((s >> i) & 1);
    sm[s] = smooth(x, rv[s]);
  }
  auto total_circles = [&](int s) { return sm[s].count + loops; };
  auto qdeg = [&](int s, std::uint32_t w) {
    int k = total_circles(s);
    int minus = std::popcount(w);
    return (k - minus) - minus + std::popcount(static_cast<unsigned>(s)) + npos - 2 * nneg;
  };

  // basis per (r, q)
  std::map<std::pair<int, int>, std::vector<Generator>> basis;
  std::map<std::pair<int, std::uint32_t>, std::size_t> where;
  for (int s = 0; s < states; ++s) {
    int r = std::popcount(static_cast<unsigned>(s));
    for (std::uint32_t w = 0; w < (1u << total_circles(s)); ++w) {
      auto& b = basis[{r, qdeg(s, w)}];
      where[{s, w}] = b.size();
      b.push_back({s, w});
    }
  }

  // differential block (r, q) -> (r + 1, q)
  auto block = [&](int r, int q) {
    const auto& src = basis[{r, q}];
    const auto& dst = basis[{r + 1, q}];
    Dense m(dst.size(), std::vector<Big>(src.size(), 0));
    for (std::size_t col = 0; col < src.size(); ++col) {
      auto [s, w] = src[col];
      for (int i = 0; i < n; ++i) {
        if ((s >> i) & 1) continue;
        int t = s | (1 << i);
        int sign = std::popcount(static_cast<unsigned>(s & ((1 << i) - 1))) % 2 ? -1 : 1;
        const auto& a = x[static_cast<std::size_t>(i)].arcs;
        // loops are the trailing circles and never touched
        int ks = sm[s].count, kt = sm[t].count;
        auto label = [&](std::uint32_t word, int c) { return (word >> c) & 1u; };
        auto target_of = [&](int c) {
          for (auto& [arc, cc] : sm[s].circle)
            if (cc == c) return sm[t].circle.at(arc);
          return -1;
        };
        std::vector<std::pair<std::uint32_t, int>> out;  // word, coefficient
        std::uint32_t base = 0;
        auto carry_loops = [&](std::uint32_t word) {
          std::uint32_t r2 = 0;
          for (int l = 0; l < loops; ++l)
            if (label(word, ks + l)) r2 |= 1u << (kt + l);
          return r2;
        };
        base |= carry_loops(w);
        if (kt == ks - 1) {
          int c1 = sm[s].circle.at(a[0]), c2 = sm[s].circle.at(a[2]);
          int merged = sm[t].circle.at(a[0]);
          for (int c = 0; c < ks; ++c)
            if (c != c1 && c != c2 && label(w, c)) base |= 1u << target_of(c);
          unsigned minus = label(w, c1) + label(w, c2);
          if (minus == 0) out.push_back({base, 1});
          if (minus == 1) out.push_back({base | (1u << merged), 1});
        } else {
          int c = sm[s].circle.at(a[0]);
          int t1 = sm[t].circle.at(a[0]), t2 = sm[t].circle.at(a[1]);
          for (int cc = 0; cc < ks; ++cc)
            if (cc != c && label(w, cc)) base |= 1u << target_of(cc);
          if (!label(w, c)) {
            out.push_back({base | (1u << t1), 1});
            out.push_back({base | (1u << t2), 1});
          } else {
            out.push_back({base | (1u << t1) | (1u << t2), 1});
          }
        }
        for (auto [word, coeff] : out) m[where.at({t, word})][col] += sign * coeff;
      }
    }
    return m;
  };

  std::map<std::pair<int, int>, Group> out;
  std::map<std::pair<int, int>, Snf> snfs;
  auto snf_of = [&](int r, int q) -> const Snf& {
    auto key = std::make_pair(r, q);
    auto it = snfs.find(key);
    if (it == snfs.end()) it = snfs.emplace(key, naive_snf(block(r, q))).first;
    return it->second;
  };
  for (const auto& [key, gens] : basis) {
    auto [r, q] = key;
    std::size_t rank_out = basis.count({r + 1, q}) ? snf_of(r, q).factors.size() : 0;
    std::size_t rank_in = 0;
    std::vector<std::int64_t> tors;
    if (basis.count({r - 1, q})) {
      const Snf& in = snf_of(r - 1, q);
      rank_in = in.factors.size();
      for (const auto& f : in.factors)
        if (f > 1) tors.push_back(static_cast<std::int64_t>(f));
    }
    Group g{gens.size() - rank_out - rank_in, tors};
    if (g.free || !g.torsion.empty()) out[{r - nneg, q}] = g;
  }
  return out;
}

std::map<int, std::int64_t> classical_jones(const std::vector<PdCrossing>& x, int loops) {
  int n = static_cast<int>(x.size());
  int npos = 0, nneg = 0;
  for (const auto& c : x) (c.sign > 0 ? npos : nneg)++;
  std::map<int, std::int64_t> poly;
  for (int s = 0; s < (1 << n); ++s) {
    std::vector<int> r;
    for (int i = 0; i < n; ++i) r.push_back((s >> i) & 1);
    int k = smooth(x, r).count + loops;
    int h = std::popcount(static_cast<unsigned>(s));
    // (-1)^h q^h (q + q^-1)^k, binomially expanded
    std::int64_t binom = 1;
    for (int j = 0; j <= k; ++j) {
      poly[h + k - 2 * j + npos - 2 * nneg] += ((h + nneg) % 2 ? -1 : 1) * binom;
      binom = binom * (k - j) / (j + 1);
    }
  }
  for (auto it = poly.begin(); it != poly.end();) it = it->second == 0 ? poly.erase(it) : std::next(it);
  return poly;
}

}  // namespace oracle
