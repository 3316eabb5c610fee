#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace possplit {

// Exact arithmetic for the extrapolation weights. cpp_rational keeps the
// canonical form (denominator > 0, gcd(|num|, den) = 1) after every
// operation, which is exactly the invariant the weight algebra relies on.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// C(n, k) by the exact multiplicative recurrence; every intermediate
// division is exact.
inline BigInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt c = 1;
  for (long i = 1; i <= k; ++i) {
    c *= n - k + i;
    c /= i;
  }
  return c;
}

inline BigInt factorial(long n) {
  BigInt f = 1;
  for (long i = 2; i <= n; ++i) f *= i;
  return f;
}

inline BigInt ipow(long base, long exp) {
  BigInt p = 1;
  for (long i = 0; i < exp; ++i) p *= base;
  return p;
}

// The one sanctioned rounding to binary floating point. Condition algebra
// never goes through here; only method construction does.
inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace possplit
