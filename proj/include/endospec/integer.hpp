#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace endospec {

// Exact arbitrary-precision integer used throughout the linear algebra and
// polynomial layers. No floating point enters any exact computation.
using Int = boost::multiprecision::cpp_int;

inline Int int_gcd(Int a, Int b) {
  using boost::multiprecision::gcd;
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  return gcd(a, b);
}

inline Int int_abs(const Int& a) { return a < 0 ? Int(-a) : a; }

}  // namespace endospec
