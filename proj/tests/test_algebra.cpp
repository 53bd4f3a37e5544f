#include <doctest.h>

#include <cstdlib>

#include "okh/algebra.hpp"

using namespace okh;

namespace {

IntMatrix swap4() {
  IntMatrix s(4, 4);
  s(0, 0) = s(3, 3) = 1;
  s(1, 2) = s(2, 1) = 1;
  return s;
}

const IntMatrix I2 = IntMatrix::identity(2);

std::int64_t det2(const IntMatrix& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

}  // namespace

TEST_CASE("multiplication tables") {
  auto one = unit(Ring::Graded), x = generator(Ring::Graded);
  CHECK(mult(x, x) == AlgebraElement{Ring::Graded, 0, 0});
  CHECK(mult(one, x) == x);
  auto l1 = unit(Ring::Lee), lx = generator(Ring::Lee);
  CHECK(mult(lx, lx) == l1);
  CHECK(point(l1) == lx);
  CHECK_THROWS_AS(one + l1, RingMismatch);

  // comultiplication, bit i = X on factor i
  TensorVector d1 = comult(one);
  CHECK(d1.coefficient(0b01) == 1);
  CHECK(d1.coefficient(0b10) == 1);
  CHECK(d1.coefficient(0b00) == 0);
  TensorVector dx = comult(x);
  CHECK(dx.coefficient(0b11) == 1);
  CHECK(dx.terms().size() == 1);
  TensorVector ldx = comult(lx);
  CHECK(ldx.coefficient(0b11) == 1);
  CHECK(ldx.coefficient(0b00) == 1);
}

TEST_CASE("matrices agree with element arithmetic") {
  for (Ring r : {Ring::Graded, Ring::Lee}) {
    IntMatrix m = mult_matrix(r);
    for (std::uint64_t w = 0; w < 4; ++w) {
      AlgebraElement a = (w & 1) ? generator(r) : unit(r);
      AlgebraElement b = (w & 2) ? generator(r) : unit(r);
      AlgebraElement p = mult(a, b);
      CHECK(m(0, w) == p.one);
      CHECK(m(1, w) == p.x);
    }
    for (std::uint64_t i = 0; i < 2; ++i) {
      TensorVector v = TensorVector::basis(r, 1, i).apply(comult_matrix(r), 2);
      CHECK(v == comult(i ? generator(r) : unit(r)));
    }
  }
}

TEST_CASE("Frobenius algebra axioms") {
  for (Ring r : {Ring::Graded, Ring::Lee}) {
    CAPTURE(ring_name(r));
    IntMatrix m = mult_matrix(r), d = comult_matrix(r), e = counit_matrix(r), u = unit_matrix(r);
    CHECK(m * tensor(m, I2) == m * tensor(I2, m));
    CHECK(m * swap4() == m);
    CHECK(m * tensor(u, I2) == I2);
    CHECK(m * tensor(I2, u) == I2);
    CHECK(tensor(d, I2) * d == tensor(I2, d) * d);
    CHECK(swap4() * d == d);
    CHECK(tensor(e, I2) * d == I2);
    CHECK(tensor(I2, e) * d == I2);
    CHECK(d * m == tensor(m, I2) * tensor(I2, d));
    CHECK(d * m == tensor(I2, m) * tensor(d, I2));
    // counit of the product is the Frobenius form, which is non-degenerate
    CHECK(e * m == IntMatrix{{frobenius_form(r)(0, 0), frobenius_form(r)(1, 0), frobenius_form(r)(0, 1),
                              frobenius_form(r)(1, 1)}});
    CHECK(std::abs(det2(frobenius_form(r))) == 1);
  }
}

TEST_CASE("neck cutting is the identity") {
  for (Ring r : {Ring::Graded, Ring::Lee}) CHECK(surgery_matrix(r) == I2);
}

TEST_CASE("conjugation is an involutive algebra automorphism") {
  for (Ring r : {Ring::Graded, Ring::Lee}) {
    IntMatrix c = conj_matrix();
    CHECK(c * c == I2);
    CHECK(mult_matrix(r) * tensor(c, c) == c * mult_matrix(r));
    for (std::int64_t a0 = -2; a0 <= 2; ++a0)
      for (std::int64_t a1 = -2; a1 <= 2; ++a1) {
        AlgebraElement a{r, a0, a1};
        CHECK(conjugate(conjugate(a)) == a);
        CHECK(counit(conjugate(a)) == -counit(a));
      }
  }
}

TEST_CASE("pairing is unimodular") {
  for (Ring r : {Ring::Graded, Ring::Lee}) {
    IntMatrix p = pairing_matrix(r);
    CHECK(std::abs(det2(p)) == 1);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        AlgebraElement a = i ? generator(r) : unit(r), b = j ? generator(r) : unit(r);
        CHECK(p(i, j) == pairing(a, b));
      }
  }
}

TEST_CASE("degrees and the dual point") {
  CHECK(word_degree(0b00, 2) == 2);
  CHECK(word_degree(0b01, 2) == 0);
  CHECK(word_degree(0b111, 3) == -3);
  // graded: unit o counit, taking X to 1
  CHECK(dual_point_matrix(Ring::Graded) == IntMatrix{{0, 1}, {0, 0}});
  CHECK(dual_point_matrix(Ring::Lee) == point_matrix(Ring::Lee));
  CHECK(duality_matrix(Ring::Graded) * point_matrix(Ring::Graded) ==
        dual_point_matrix(Ring::Graded) * duality_matrix(Ring::Graded));
}
