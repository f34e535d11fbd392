#pragma once

#include <cmath>
#include <complex>

#include "boolcl/errors.hpp"
#include "boolcl/measure.hpp"
#include "boolcl/transform.hpp"

namespace boolcl {

/// Boolean convolution: the measure whose F-transform is F_mu + F_nu - z.
/// For k- and l-atom inputs the result has k + l - 1 atoms.
inline AtomicMeasure boolean_convolve(const AtomicMeasure& mu, const AtomicMeasure& nu) {
  if (!mu.is_probability() || !nu.is_probability())
    throw invalid_input("boolean convolution requires probability measures");
  const RationalFn<Rational> f = cauchy_transform_exact(mu.normalized_exact()).reciprocal() +
                                 cauchy_transform_exact(nu.normalized_exact()).reciprocal() -
                                 Polynomial<Rational>::x();
  return recover_from_cauchy(f.reciprocal(), "boolean_convolve");
}

/// n-fold Boolean convolution power via F_{mu^n}(z) = (1-n) z + n F_mu(z);
/// the atom count is preserved.
inline AtomicMeasure boolean_power(const AtomicMeasure& mu, long n) {
  if (!mu.is_probability()) throw invalid_input("boolean power requires a probability measure");
  if (n < 1) throw invalid_input("boolean power requires n >= 1");
  const RationalFn<Rational> f =
      cauchy_transform_exact(mu.normalized_exact()).reciprocal() * Rational(n) +
      Polynomial<Rational>::constant(Rational(1) - Rational(n)) * Polynomial<Rational>::x();
  return recover_from_cauchy(f.reciprocal(), "boolean_power");
}

/// Central-limit normalization: mu_n = D_{1/sqrt(n)} mu^n for a mean-0,
/// variance-1 probability measure.  The symmetric Bernoulli law is the fixed
/// point of this map.
inline AtomicMeasure clt_normalize(const AtomicMeasure& mu, long n) {
  if (std::abs(mu.moment(1)) > 1e-9 || std::abs(mu.moment(2) - 1.0) > 1e-9)
    throw invalid_input("clt normalization requires mean 0 and variance 1");
  return dilate(boolean_power(mu, n), 1.0 / std::sqrt(static_cast<double>(n)));
}

/// W_n(z) = z - alpha/sqrt(n) - G_omega(sqrt(n) z)/sqrt(n); the F-transform
/// of mu_n is z - 1/W_n(z).
inline std::complex<double> clt_denominator(const ReprData& repr, long n, std::complex<double> z) {
  if (n < 1) throw invalid_input("clt evaluation requires n >= 1");
  if (!(z.imag() > 0.0)) throw invalid_input("evaluation point must lie in the upper half plane");
  const double s = std::sqrt(static_cast<double>(n));
  std::complex<double> w = z - repr.alpha / s;
  const std::complex<double> zs = z * s;
  for (std::size_t j = 0; j < repr.omega.size(); ++j)
    w -= repr.omega.weight(j) / (zs - repr.omega.location(j)) / s;
  return w;
}

/// F-transform of the normalized n-fold power, evaluated directly from the
/// continued-fraction data without recovering atoms.
inline std::complex<double> eval_clt_f(const ReprData& repr, long n, const ComplexPoint& z) {
  const std::complex<double> w = clt_denominator(repr, n, z.value());
  if (std::abs(w) == 0.0) throw numeric_error("clt evaluation hit a vanishing denominator");
  return z.value() - 1.0 / w;
}

}  // namespace boolcl
