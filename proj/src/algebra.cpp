#include "okh/algebra.hpp"

#include <bit>
#include <sstream>

#include "okh/checked.hpp"

namespace okh {

std::string ring_name(Ring r) { return r == Ring::Graded ? "graded" : "lee"; }

AlgebraElement unit(Ring r) { return {r, 1, 0}; }
AlgebraElement generator(Ring r) { return {r, 0, 1}; }

static void same_ring(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.ring != b.ring) throw RingMismatch();
}

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
  same_ring(a, b);
  return {a.ring, add_checked(a.one, b.one), add_checked(a.x, b.x)};
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) { return a + (-1) * b; }

AlgebraElement operator*(std::int64_t s, const AlgebraElement& a) {
  return {a.ring, mul_checked(s, a.one), mul_checked(s, a.x)};
}

AlgebraElement mult(const AlgebraElement& a, const AlgebraElement& b) {
  same_ring(a, b);
  std::int64_t xx = mul_checked(a.x, b.x);
  std::int64_t one = mul_checked(a.one, b.one);
  if (a.ring == Ring::Lee) one = add_checked(one, xx);
  std::int64_t x = add_checked(mul_checked(a.one, b.x), mul_checked(a.x, b.one));
  return {a.ring, one, x};
}

AlgebraElement point(const AlgebraElement& a) { return mult(generator(a.ring), a); }

AlgebraElement conjugate(const AlgebraElement& a) { return {a.ring, a.one, -a.x}; }

std::int64_t counit(const AlgebraElement& a) { return a.x; }

std::int64_t pairing(const AlgebraElement& a, const AlgebraElement& b) { return counit(mult(a, conjugate(b))); }

TensorVector TensorVector::basis(Ring ring, int arity, std::uint64_t word) {
  TensorVector v(ring, arity);
  v.add(word, 1);
  return v;
}

TensorVector TensorVector::from(const AlgebraElement& a) {
  TensorVector v(a.ring, 1);
  v.add(0, a.one);
  v.add(1, a.x);
  return v;
}

void TensorVector::add(std::uint64_t word, std::int64_t coeff) {
  if (coeff == 0) return;
  auto& c = terms_[word];
  c = add_checked(c, coeff);
  if (c == 0) terms_.erase(word);
}

std::int64_t TensorVector::coefficient(std::uint64_t word) const {
  auto it = terms_.find(word);
  return it == terms_.end() ? 0 : it->second;
}

TensorVector TensorVector::tensor(const TensorVector& other) const {
  if (ring_ != other.ring_) throw RingMismatch();
  TensorVector r(ring_, arity_ + other.arity_);
  for (auto [w1, c1] : terms_)
    for (auto [w2, c2] : other.terms_) r.add(w1 | (w2 << arity_), mul_checked(c1, c2));
  return r;
}

TensorVector TensorVector::apply(const IntMatrix& m, int out_arity) const {
  if (m.cols() != (std::size_t{1} << arity_) || m.rows() != (std::size_t{1} << out_arity))
    throw std::invalid_argument("matrix does not match tensor arity");
  TensorVector r(ring_, out_arity);
  for (auto [w, c] : terms_)
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (m(i, w) != 0) r.add(i, mul_checked(m(i, w), c));
  return r;
}

std::string TensorVector::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto [w, c] : terms_) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << '-';
    first = false;
    std::int64_t a = c < 0 ? -c : c;
    if (a != 1) os << a << '*';
    for (int i = 0; i < arity_; ++i) os << (i ? "⊗" : "") << ((w >> i) & 1U ? "X" : "1");
  }
  return os.str();
}

TensorVector comult(const AlgebraElement& a) {
  TensorVector v = TensorVector::from(a);
  return v.apply(comult_matrix(a.ring), 2);
}

int word_degree(std::uint64_t word, int arity) {
  int xs = std::popcount(word);
  return arity - 2 * xs;
}

static AlgebraElement basis_element(Ring r, std::size_t i) { return i == 0 ? unit(r) : generator(r); }

IntMatrix mult_matrix(Ring r) {
  IntMatrix m(2, 4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      AlgebraElement p = mult(basis_element(r, i), basis_element(r, j));
      m(0, i + 2 * j) = p.one;
      m(1, i + 2 * j) = p.x;
    }
  return m;
}

IntMatrix frobenius_form(Ring r) {
  IntMatrix m(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) m(i, j) = counit(mult(basis_element(r, i), basis_element(r, j)));
  return m;
}

IntMatrix comult_matrix(Ring r) {
  // Delta(x) = sum_i x e_i (x) e_i^dual with the dual basis for the form.
  IntMatrix f = frobenius_form(r);
  std::int64_t det = f(0, 0) * f(1, 1) - f(0, 1) * f(1, 0);
  if (det != 1 && det != -1) throw std::logic_error("Frobenius form is not unimodular");
  IntMatrix inv(2, 2);
  inv(0, 0) = f(1, 1) * det;
  inv(0, 1) = -f(0, 1) * det;
  inv(1, 0) = -f(1, 0) * det;
  inv(1, 1) = f(0, 0) * det;
  // e_i^dual = sum_j inv(j, i) e_j
  IntMatrix m(4, 2);
  for (std::size_t col = 0; col < 2; ++col) {
    TensorVector acc(r, 2);
    for (std::size_t i = 0; i < 2; ++i) {
      AlgebraElement left = mult(basis_element(r, col), basis_element(r, i));
      for (std::size_t j = 0; j < 2; ++j) {
        std::int64_t w = inv(j, i);
        if (w == 0) continue;
        acc.add(0 | (j << 1), w * left.one);
        acc.add(1 | (j << 1), w * left.x);
      }
    }
    for (auto [word, c] : acc.terms()) m(word, col) = c;
  }
  return m;
}

IntMatrix counit_matrix(Ring) { return IntMatrix{{0, 1}}; }
IntMatrix unit_matrix(Ring) { return IntMatrix{{1}, {0}}; }

IntMatrix point_matrix(Ring r) {
  IntMatrix m(2, 2);
  for (std::size_t j = 0; j < 2; ++j) {
    AlgebraElement p = point(basis_element(r, j));
    m(0, j) = p.one;
    m(1, j) = p.x;
  }
  return m;
}

IntMatrix conj_matrix() { return IntMatrix{{1, 0}, {0, -1}}; }

IntMatrix pairing_matrix(Ring r) {
  IntMatrix m(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) m(i, j) = pairing(basis_element(r, i), basis_element(r, j));
  return m;
}

IntMatrix duality_matrix(Ring r) { return frobenius_form(r).transpose(); }

IntMatrix dual_point_matrix(Ring r) {
  IntMatrix phi = duality_matrix(r);
  // phi is a signed permutation in both rings, so its inverse is its transpose.
  return phi * point_matrix(r) * phi.transpose();
}

IntMatrix surgery_matrix(Ring r) {
  IntMatrix u = unit_matrix(r), e = counit_matrix(r), x = point_matrix(r);
  return u * e * x + x * u * e;
}

}  // namespace okh
