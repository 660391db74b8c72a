#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace neq {

/// Arbitrary-precision integer used by the constraint solver and the
/// free-nilpotent oracle.
using Integer = boost::multiprecision::cpp_int;

/// Thrown when fixed-width group-coordinate arithmetic would overflow.
class OverflowError : public std::overflow_error {
public:
  using std::overflow_error::overflow_error;
};

namespace checked {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("int64 addition overflow");
  return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("int64 subtraction overflow");
  return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("int64 multiplication overflow");
  return r;
}

inline std::int64_t neg(std::int64_t a) { return sub(0, a); }

} // namespace checked

/// Representative of a modulo m in {0..m-1}; m > 0.
inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline Integer mod_floor(const Integer &a, const Integer &m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

inline Integer abs(const Integer &a) { return a < 0 ? Integer(-a) : a; }

inline Integer gcd(const Integer &a, const Integer &b) {
  return boost::multiprecision::gcd(abs(a), abs(b));
}

inline std::int64_t gcd(std::int64_t a, std::int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::int64_t lcm(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  return checked::mul(a / gcd(a, b), b);
}

/// Extended Euclid: returns g = gcd(a,b) >= 0 together with x, y such that
/// a*x + b*y = g.
struct ExtendedGcd {
  Integer g, x, y;
};

inline ExtendedGcd extended_gcd(const Integer &a, const Integer &b) {
  Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

/// Floor division (rounds toward negative infinity).
inline Integer floor_div(const Integer &a, const Integer &b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

/// Largest s with s*s <= n; n >= 0.
inline Integer isqrt(const Integer &n) {
  if (n < 0) throw std::domain_error("isqrt of negative number");
  return boost::multiprecision::sqrt(n);
}

inline bool is_square(const Integer &n, Integer *root = nullptr) {
  if (n < 0) return false;
  Integer s = isqrt(n);
  if (root) *root = s;
  return s * s == n;
}

inline bool fits_int64(const Integer &v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

inline std::int64_t to_int64(const Integer &v) {
  if (!fits_int64(v)) throw OverflowError("integer does not fit in 64 bits: " + v.str());
  return static_cast<std::int64_t>(v);
}

} // namespace neq
