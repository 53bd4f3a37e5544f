#include "okh/laurent.hpp"

#include <sstream>

#include "okh/checked.hpp"

namespace okh {

void LaurentPoly::add_term(int exponent, std::int64_t c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(exponent, c);
  if (fresh) return;
  it->second = add_checked(it->second, c);
  if (it->second == 0) terms_.erase(it);
}

LaurentPoly LaurentPoly::monomial(std::int64_t c, int exponent) {
  LaurentPoly p;
  p.add_term(exponent, c);
  return p;
}

std::int64_t LaurentPoly::coefficient(int exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? 0 : it->second;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  r += o;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (auto [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly LaurentPoly::operator-() const { return *this * -1; }

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly r;
  for (auto [e1, c1] : terms_)
    for (auto [e2, c2] : o.terms_) r.add_term(e1 + e2, mul_checked(c1, c2));
  return r;
}

LaurentPoly LaurentPoly::operator*(std::int64_t s) const {
  LaurentPoly r;
  for (auto [e, c] : terms_) r.add_term(e, mul_checked(c, s));
  return r;
}

LaurentPoly LaurentPoly::pow(int n) const {
  if (n < 0) throw std::invalid_argument("negative power of a Laurent polynomial");
  LaurentPoly r = constant(1);
  for (int i = 0; i < n; ++i) r = r * *this;
  return r;
}

LaurentPoly LaurentPoly::inverted() const {
  LaurentPoly r;
  for (auto [e, c] : terms_) r.add_term(-e, c);
  return r;
}

LaurentPoly LaurentPoly::negated_variable() const {
  LaurentPoly r;
  for (auto [e, c] : terms_) r.add_term(e, e % 2 ? -c : c);
  return r;
}

std::int64_t LaurentPoly::evaluate_at_one() const {
  std::int64_t s = 0;
  for (auto [e, c] : terms_) s = add_checked(s, c);
  return s;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    auto [e, c] = *it;
    std::int64_t mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << mag;
      continue;
    }
    if (mag != 1) os << mag << '*';
    os << "q^" << e;
  }
  return os.str();
}

nlohmann::json LaurentPoly::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) j.push_back({it->first, it->second});
  return j;
}

}  // namespace okh
