#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <json.hpp>

namespace okh {

// Integer Laurent polynomial in q. Zero coefficients are never stored.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  static LaurentPoly constant(std::int64_t c) { return monomial(c, 0); }
  static LaurentPoly monomial(std::int64_t c, int exponent);
  static LaurentPoly q(int exponent = 1) { return monomial(1, exponent); }

  const std::map<int, std::int64_t>& terms() const { return terms_; }
  std::int64_t coefficient(int exponent) const;
  bool is_zero() const { return terms_.empty(); }

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator*(std::int64_t s) const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  bool operator==(const LaurentPoly& o) const = default;

  LaurentPoly pow(int n) const;
  // q -> q^-1
  LaurentPoly inverted() const;
  // q -> -q
  LaurentPoly negated_variable() const;
  std::int64_t evaluate_at_one() const;

  // Descending exponents: "q^1 + q^-1", "1 + q^-2", "2*q^3 - q^1".
  std::string to_string() const;
  // [[exponent, coefficient], ...] in descending exponent order.
  nlohmann::json to_json() const;

 private:
  void add_term(int exponent, std::int64_t c);
  std::map<int, std::int64_t> terms_;
};

// q + q^-1
inline LaurentPoly loop_value() { return LaurentPoly::q(1) + LaurentPoly::q(-1); }

}  // namespace okh
