#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>

#include "boolcl/errors.hpp"

namespace boolcl {

/// Exact rational scalar. Conversions from double are exact (every finite
/// double is a dyadic rational), so measures given in floating point can be
/// pushed through the rational-function algebra without rounding.
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return static_cast<double>(r); }
inline double to_double(double x) { return x; }

inline Rational exact_rational(double x) {
  if (!std::isfinite(x)) throw invalid_input("non-finite value has no rational representation");
  return Rational(x);
}

}  // namespace boolcl
