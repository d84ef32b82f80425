#pragma once

#include <cstdint>
#include <stdexcept>

namespace gqd {

struct OverflowError : std::overflow_error {
  using std::overflow_error::overflow_error;
};

inline int64_t checked_add(int64_t x, int64_t y) {
  int64_t r;
  if (__builtin_add_overflow(x, y, &r)) throw OverflowError("a-exponent overflow in addition");
  return r;
}

inline int64_t checked_sub(int64_t x, int64_t y) {
  int64_t r;
  if (__builtin_sub_overflow(x, y, &r)) throw OverflowError("a-exponent overflow in subtraction");
  return r;
}

inline int64_t checked_mul(int64_t x, int64_t y) {
  int64_t r;
  if (__builtin_mul_overflow(x, y, &r)) throw OverflowError("a-exponent overflow in multiplication");
  return r;
}

inline int64_t checked_neg(int64_t x) { return checked_sub(0, x); }

// floor division and non-negative remainder, d != 0
inline int64_t floor_div(int64_t a, int64_t d) {
  int64_t q = a / d;
  if ((a % d != 0) && ((a < 0) != (d < 0))) --q;
  return q;
}

inline int64_t pos_mod(int64_t a, int64_t d) {
  int64_t r = a % d;
  if (r < 0) r += (d < 0 ? -d : d);
  return r;
}

}  // namespace gqd
