#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "boolcl/errors.hpp"
#include "boolcl/measure.hpp"
#include "boolcl/rational_fn.hpp"
#include "boolcl/roots.hpp"

namespace boolcl {

/// Point x + iy in the open upper half plane.
struct ComplexPoint {
  double x, y;
  ComplexPoint(double x_, double y_) : x(x_), y(y_) {
    if (!(y > 0.0)) throw invalid_input("evaluation point must lie in the upper half plane");
  }
  std::complex<double> value() const { return {x, y}; }
};

/// Cauchy transform G(z) = sum w_j / (z - t_j) as an exact rational function
/// in one variable; denominator monic of degree k, numerator of degree k-1
/// with leading coefficient equal to the total mass.
inline RationalFn<Rational> cauchy_transform_exact(const AtomicMeasure& mu) {
  if (mu.empty()) return RationalFn<Rational>::zero();
  const auto& atoms = mu.exact_atoms();
  Polynomial<Rational> den = Polynomial<Rational>::constant(Rational(1));
  for (const auto& a : atoms)
    den = den * Polynomial<Rational>(std::vector<Rational>{-a.location, Rational(1)});
  Polynomial<Rational> num;
  for (const auto& a : atoms) {
    Polynomial<Rational> q, r;
    Polynomial<Rational>::divmod(
        den, Polynomial<Rational>(std::vector<Rational>{-a.location, Rational(1)}), q, r);
    num += q * a.weight;
  }
  return RationalFn<Rational>(std::move(num), std::move(den));
}

inline RationalFn<double> cauchy_transform(const AtomicMeasure& mu) {
  return cauchy_transform_exact(mu).to_double_fn();
}

inline RationalFn<Rational> exactify(const RationalFn<double>& f) {
  const auto lift = [](const Polynomial<double>& p) {
    std::vector<Rational> c(p.coefficients().size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = exact_rational(p.coefficients()[i]);
    return Polynomial<Rational>(std::move(c));
  };
  return RationalFn<Rational>(lift(f.num()), lift(f.den()));
}

inline std::complex<double> eval_cauchy(const AtomicMeasure& mu, std::complex<double> z) {
  if (!(z.imag() > 0.0)) throw invalid_input("evaluation point must lie in the upper half plane");
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t i = 0; i < mu.size(); ++i) acc += mu.weight(i) / (z - mu.location(i));
  return acc;
}
inline std::complex<double> eval_cauchy(const AtomicMeasure& mu, const ComplexPoint& z) {
  return eval_cauchy(mu, z.value());
}
template <class T>
std::complex<double> eval_cauchy(const RationalFn<T>& g, const ComplexPoint& z) {
  return g(z.value());
}

/// F = 1/G, the reciprocal Cauchy transform.
inline std::complex<double> eval_f_transform(const AtomicMeasure& mu, std::complex<double> z) {
  const std::complex<double> g = eval_cauchy(mu, z);
  if (std::abs(g) == 0.0)
    throw numeric_error("reciprocal transform undefined: Cauchy transform vanishes");
  return 1.0 / g;
}
inline std::complex<double> eval_f_transform(const AtomicMeasure& mu, const ComplexPoint& z) {
  return eval_f_transform(mu, z.value());
}
template <class T>
std::complex<double> eval_f_transform(const RationalFn<T>& g, const ComplexPoint& z) {
  const std::complex<double> v = g(z.value());
  if (std::abs(v) == 0.0)
    throw numeric_error("reciprocal transform undefined: Cauchy transform vanishes");
  return 1.0 / v;
}

/// |G(x+iy)| <= mass / y.
inline double cauchy_mass_bound(const AtomicMeasure& mu, const ComplexPoint& z) {
  return mu.total_mass() / z.y;
}

/// |G(x+iy)| < 2 mass/|x| + 2^i (int |t|^i dmu) / (y |x|^i), any x != 0.
inline double cauchy_moment_bound(const AtomicMeasure& mu, const ComplexPoint& z, int i) {
  if (i < 0) throw invalid_input("moment order must be non-negative");
  if (z.x == 0.0) throw invalid_input("moment bound needs x != 0");
  const double ax = std::abs(z.x);
  return 2.0 * mu.total_mass() / ax +
         std::ldexp(mu.abs_moment(i), i) / (z.y * std::pow(ax, i));
}

namespace detail {

/// Coefficients widened to extended precision.  Rounding the exact
/// polynomial to plain doubles already perturbs clustered roots by more than
/// the recovery paths tolerate, so the last Newton steps and the residues
/// run in long double against these.
inline std::vector<long double> extended_coeffs(const Polynomial<Rational>& p) {
  std::vector<long double> c(static_cast<std::size_t>(p.degree()) + 1);
  for (int i = 0; i <= p.degree(); ++i)
    c[static_cast<std::size_t>(i)] = static_cast<long double>(p.coeff(i));
  return c;
}

inline long double eval_extended(const std::vector<long double>& c, long double x) {
  long double acc = 0.0L;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

inline std::vector<long double> derivative_extended(const std::vector<long double>& c) {
  if (c.size() <= 1) return {0.0L};
  std::vector<long double> d(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<long double>(i);
  return d;
}

}  // namespace detail

/// Measure encoded by a rational Cauchy transform: atoms at the real poles,
/// weights the residues.  Complex poles or non-positive residues mean the
/// input is not the transform of a measure.
inline AtomicMeasure recover_from_cauchy(const RationalFn<Rational>& g,
                                         const char* context = "recover") {
  if (g.is_zero()) return AtomicMeasure();
  if (g.num().degree() != g.den().degree() - 1)
    throw invalid_input(std::string(context) +
                        ": not the Cauchy transform of a finite measure (degree mismatch)");
  const Rational mass = g.num().leading();  // den is monic
  if (!(mass > 0)) throw numeric_error(std::string(context) + ": encoded mass is not positive");

  const Polynomial<double> den = g.den().to_double_poly();
  const std::vector<long double> cden = detail::extended_coeffs(g.den());
  const std::vector<long double> cnum = detail::extended_coeffs(g.num());
  const std::vector<long double> cdd = detail::derivative_extended(cden);
  std::vector<Atom> atoms;
  double sum = 0.0;
  for (const double seed : real_roots_checked(den, context)) {
    long double x = seed;
    for (int it = 0; it < 6; ++it) {
      const long double dpx = detail::eval_extended(cdd, x);
      if (dpx == 0.0L) break;
      const long double step = detail::eval_extended(cden, x) / dpx;
      x -= step;
      if (std::abs(step) <= 1e-18L * (1.0L + std::abs(x))) break;
    }
    const long double dpx = detail::eval_extended(cdd, x);
    if (dpx == 0.0L)
      throw numeric_error(std::string(context) + ": repeated pole, not a finite atomic measure");
    const double w = static_cast<double>(detail::eval_extended(cnum, x) / dpx);
    if (!(w > 0.0)) {
      // a pole-zero pair at working precision: the true residue is below
      // evaluation noise and its computed sign is meaningless, so no atom
      if (std::abs(w) <= 1e-12 * to_double(mass)) continue;
      throw numeric_error(std::string(context) + ": non-positive residue, not a measure");
    }
    atoms.push_back({static_cast<double>(x), w});
    sum += w;
  }
  const double m = to_double(mass);
  if (std::abs(sum - m) > 1e-9 * std::max(1.0, m))
    throw numeric_error(std::string(context) + ": residues do not add up to the encoded mass");
  return AtomicMeasure(atoms);
}

/// Inverse of the F-transform: F must satisfy deg num = deg den + 1 (F ~ z
/// at infinity for a probability measure).
inline AtomicMeasure recover_measure(const RationalFn<Rational>& f) {
  if (f.num().degree() != f.den().degree() + 1)
    throw invalid_input("recover_measure: F-transform must have deg num = deg den + 1");
  return recover_from_cauchy(f.reciprocal(), "recover_measure");
}
inline AtomicMeasure recover_measure(const RationalFn<double>& f) {
  return recover_measure(exactify(f));
}

namespace detail {

/// Drop coefficients of p above target_degree.  They cancel exactly when the
/// mean-0/variance-1 hypotheses hold exactly; otherwise they must be
/// negligible against the operand scale.
inline Polynomial<Rational> force_degree(const Polynomial<Rational>& p, int target_degree,
                                         double scale, const char* what) {
  if (p.degree() <= target_degree) return p;
  for (int i = target_degree + 1; i <= p.degree(); ++i)
    if (std::abs(to_double(p.coeff(i))) > 1e-9 * std::max(scale, 1.0))
      throw invalid_input(std::string(what) + ": hypothesis violation (top coefficients do not cancel)");
  std::vector<Rational> c;
  c.reserve(static_cast<std::size_t>(target_degree) + 1);
  for (int i = 0; i <= target_degree; ++i) c.push_back(p.coeff(i));
  return Polynomial<Rational>(std::move(c));
}

}  // namespace detail

/// Continued-fraction data of a mean-0, variance-1 probability measure:
/// F(z) = z - 1/(z - alpha - G_omega(z)) with alpha = m3(mu) and
/// omega(R) = m4(mu) - m3(mu)^2 - 1.  K = max(omega mass, second moment of
/// omega) feeds the rate constants.  The *_exact fields carry the rational
/// values the doubles were rounded from.
struct ReprData {
  double alpha = 0.0;
  AtomicMeasure omega;
  double K = 0.0;
  Rational alpha_exact, omega_mass_exact, omega_m2_exact;
};

inline ReprData extract_representation(const AtomicMeasure& mu) {
  if (!mu.is_probability())
    throw invalid_input("representation extraction requires a probability measure");
  if (mu.size() < 2)
    throw invalid_input("representation extraction requires at least 2 atoms (variance 1)");
  if (std::abs(mu.moment(1)) > 1e-9 || std::abs(mu.moment(2) - 1.0) > 1e-9)
    throw invalid_input("representation extraction requires mean 0 and variance 1");

  const int k = static_cast<int>(mu.size());
  const RationalFn<Rational> g = cauchy_transform_exact(mu);
  const Polynomial<Rational>& N = g.num();
  const Polynomial<Rational>& D = g.den();

  // G_nu = z - 1/G = (z N - D)/N; the top two coefficients cancel under the
  // hypotheses, leaving the transform of a probability measure with k-1 atoms
  const double scale1 = std::max(N.max_abs_coefficient(), D.max_abs_coefficient());
  const Polynomial<Rational> p_nu = detail::force_degree(Polynomial<Rational>::x() * N - D, k - 2,
                                                         scale1, "representation (first level)");
  const RationalFn<Rational> g_nu(p_nu, N);
  const AtomicMeasure nu = recover_from_cauchy(g_nu, "representation: nu");

  const std::vector<Rational> nu_moments = g_nu.series_moments(2);
  if (nu_moments[0].is_zero())
    throw numeric_error("representation: first-level transform carries no mass");
  const Rational alpha = nu_moments[1] / nu_moments[0];

  // G_omega = z - alpha - 1/G_nu, again with the top two coefficients cancelling
  const Polynomial<Rational>& pn = g_nu.num();
  const Polynomial<Rational>& qn = g_nu.den();
  const Polynomial<Rational> shifted(std::vector<Rational>{-alpha, Rational(1)});
  const double scale2 = std::max(pn.max_abs_coefficient(), qn.max_abs_coefficient());
  const Polynomial<Rational> p_om =
      detail::force_degree(shifted * pn - qn, k - 3, scale2, "representation (second level)");
  const RationalFn<Rational> g_om =
      p_om.is_zero() ? RationalFn<Rational>::zero() : RationalFn<Rational>(p_om, pn);
  const AtomicMeasure omega = recover_from_cauchy(g_om, "representation: omega");

  Rational omega_mass(0), omega_m2(0);
  if (!g_om.is_zero()) {
    const std::vector<Rational> om_moments = g_om.series_moments(3);
    omega_mass = om_moments[0];
    omega_m2 = om_moments[2];
  }

  // moment identities; exact equalities when the input data is exact
  const Rational m3 = mu.moment_exact(3);
  const Rational m4 = mu.moment_exact(4);
  if (std::abs(to_double(alpha - m3)) > 1e-9)
    throw numeric_error("representation: alpha does not match the third moment");
  if (std::abs(to_double(omega_mass - (m4 - m3 * m3 - Rational(1)))) > 1e-9)
    throw numeric_error("representation: omega mass does not match the moment identity");

  ReprData repr;
  repr.alpha = to_double(alpha);
  repr.omega = omega;
  repr.K = std::max(to_double(omega_mass), to_double(omega_m2));
  repr.alpha_exact = alpha;
  repr.omega_mass_exact = omega_mass;
  repr.omega_m2_exact = omega_m2;

  // reconstruction check at fixed pseudo-random points in the upper half plane
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
  std::uniform_real_distribution<double> ux(-3.0, 3.0), uy(0.1, 2.0);
  for (int i = 0; i < 20; ++i) {
    const std::complex<double> z(ux(rng), uy(rng));
    const std::complex<double> f_direct = 1.0 / eval_cauchy(mu, z);
    std::complex<double> w = z - repr.alpha;
    for (std::size_t j = 0; j < omega.size(); ++j)
      w -= omega.weight(j) / (z - omega.location(j));
    const std::complex<double> f_repr = z - 1.0 / w;
    if (std::abs(f_direct - f_repr) > 1e-10 * (1.0 + std::abs(f_direct)))
      throw numeric_error("representation: reconstruction identity failed");
  }
  return repr;
}

}  // namespace boolcl
