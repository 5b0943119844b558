#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace camr {

// All load accounting is exact: arbitrary-precision integers and rationals,
// no floating point anywhere on these paths.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// canonical "num/den" rendering; integral values render with an explicit /1
inline std::string rat_str(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

inline BigInt ipow(const BigInt& base, unsigned exp) {
  BigInt r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

inline BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;  // exact: r is always a binomial coefficient here
  }
  return r;
}

}  // namespace camr
