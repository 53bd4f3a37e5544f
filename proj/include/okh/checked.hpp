#pragma once

#include <cstdint>
#include <stdexcept>

namespace okh {

struct OverflowError : std::overflow_error {
  OverflowError() : std::overflow_error("64-bit integer overflow") {}
};

inline std::int64_t add_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError();
  return r;
}

inline std::int64_t mul_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError();
  return r;
}

}  // namespace okh
