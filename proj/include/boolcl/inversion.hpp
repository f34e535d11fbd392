#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "boolcl/errors.hpp"
#include "boolcl/measure.hpp"
#include "boolcl/transform.hpp"

namespace boolcl {

/// Smoothed mass -(1/pi) int_a^b Im G(x+iy) dx of an atomic measure, in
/// closed form: each atom contributes w (arctan((b-t)/y) - arctan((a-t)/y))/pi.
/// Endpoints may be infinite; over the whole line this returns the total mass.
inline double poisson_smoothed_mass(const AtomicMeasure& mu, double a, double b, double y) {
  if (!(y > 0.0)) throw invalid_input("smoothing height y must be positive");
  if (!(a < b)) throw invalid_input("integration interval requires a < b");
  double acc = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double t = mu.location(i);
    acc += mu.weight(i) * (std::atan((b - t) / y) - std::atan((a - t) / y));
  }
  return acc / std::numbers::pi;
}

/// Tail control for black-box transforms: with mass M and int t^2 dmu = m2,
/// -Im G(x+iy) <= 4yM/x^2 + 4 m2/(y x^2) for every x != 0 (split the measure
/// at |t| = |x|/2 and use Chebyshev on the far part).  With a known support
/// radius R the sharper envelope y M/(x-R)^2 applies beyond R.
struct TailData {
  double mass = 0.0;
  double abs_moment2 = 0.0;
  std::optional<double> support_radius;
};

/// Callable contract for a Cauchy transform on the upper half plane, plus
/// optional tail data (for truncating infinite ranges) and peak locations
/// (quadrature subdivision hints).
struct TransformEvaluator {
  std::function<std::complex<double>(std::complex<double>)> g;
  std::optional<TailData> tail;
  std::vector<double> peaks;
};

inline TransformEvaluator transform_evaluator(const AtomicMeasure& mu) {
  TransformEvaluator ev;
  ev.g = [mu](std::complex<double> z) { return eval_cauchy(mu, z); };
  double radius = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i)
    radius = std::max(radius, std::abs(mu.location(i)));
  ev.tail = TailData{mu.total_mass(), mu.abs_moment(2), radius};
  ev.peaks = mu.locations();
  return ev;
}

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // certified estimate, including truncated-tail remainders
};

namespace detail {

/// Integral of the tail envelope over [X, +inf) (one side).
inline double tail_remainder(const TailData& td, double y, double X) {
  constexpr double pi = std::numbers::pi;
  if (td.support_radius && X > *td.support_radius + 1e-300)
    return td.mass * y / (pi * (X - *td.support_radius));
  return (4.0 * y * td.mass + 4.0 * td.abs_moment2 / y) / (pi * X);
}

/// Smallest X with tail_remainder <= budget (plus a margin past the hull).
inline double tail_cutoff(const TailData& td, double y, double budget, double hull) {
  constexpr double pi = std::numbers::pi;
  double X;
  if (td.support_radius)
    X = *td.support_radius + td.mass * y / (pi * budget);
  else
    X = (4.0 * y * td.mass + 4.0 * td.abs_moment2 / y) / (pi * budget);
  return std::max({X, hull + 1.0, 1.0});
}

/// Segment endpoints for [a, b]: the peaks and geometric fans of initial
/// width y around them, so Poisson spikes are resolved before the rule runs.
inline std::vector<double> quad_breakpoints(double a, double b, double y,
                                            const std::vector<double>& peaks) {
  std::vector<double> pts{a, b};
  const double span = b - a;
  const auto push = [&](double x) {
    if (x > a && x < b) pts.push_back(x);
  };
  const auto fan = [&](double p) {
    push(p);
    for (double h = std::max(y, span * 1e-12); h < span; h *= 2.0) {
      push(p - h);
      push(p + h);
    }
  };
  for (const double p : peaks) fan(p);
  if (peaks.empty()) fan(0.5 * (a + b));
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  for (const double x : pts)
    if (out.empty() || x - out.back() > span * 1e-15) out.push_back(x);
  out.back() = b;
  return out;
}

template <class F>
QuadratureResult integrate_segments(F&& f, const std::vector<double>& pts) {
  using rule = boost::math::quadrature::gauss_kronrod<double, 15>;
  QuadratureResult r;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double err = 0.0;
    r.value += rule::integrate(f, pts[i], pts[i + 1], 12, 1e-12, &err);
    r.error += err;
  }
  return r;
}

}  // namespace detail

/// Adaptive quadrature of the smoothed density -(1/pi) Im G(x+iy) over
/// [a, b].  Subdivision is seeded at the evaluator's peaks; infinite
/// endpoints are truncated where the tail envelope certifies the remainder
/// below tol/4, which is folded into the returned error.  The transform is
/// lazily validated (Im G <= 0 at the sampled points).
inline QuadratureResult smoothed_mass_quadrature(const TransformEvaluator& ev, double a, double b,
                                                 double y, double tol = 1e-10) {
  if (!(y > 0.0)) throw invalid_input("smoothing height y must be positive");
  if (!(a < b)) throw invalid_input("integration interval requires a < b");
  if (!ev.g) throw invalid_input("transform evaluator has no callable");

  constexpr double pi = std::numbers::pi;
  double tail_err = 0.0;
  double lo = a, hi = b;
  if (std::isinf(a) || std::isinf(b)) {
    if (!ev.tail)
      throw invalid_input("infinite integration range requires tail-bound data");
    double hull = 0.0;
    for (const double p : ev.peaks) hull = std::max(hull, std::abs(p));
    const double X = detail::tail_cutoff(*ev.tail, y, tol / 4.0, hull);
    if (std::isinf(a)) {
      lo = std::min(-X, std::isinf(b) ? 0.0 : b - 1.0);
      tail_err += detail::tail_remainder(*ev.tail, y, -lo);
    }
    if (std::isinf(b)) {
      hi = std::max(X, std::isinf(a) ? 0.0 : a + 1.0);
      tail_err += detail::tail_remainder(*ev.tail, y, hi);
    }
  }

  double worst_positive_im = 0.0;
  const auto f = [&](double x) {
    const std::complex<double> g = ev.g(std::complex<double>(x, y));
    worst_positive_im = std::max(worst_positive_im, g.imag());
    return -g.imag() / pi;
  };
  QuadratureResult r = detail::integrate_segments(f, detail::quad_breakpoints(lo, hi, y, ev.peaks));
  if (worst_positive_im > 1e-9 * (1.0 + std::abs(r.value)))
    throw invalid_input("evaluator is not a Cauchy transform: Im G > 0 on the upper half plane");
  r.error += tail_err;
  if (r.error > tol)
    throw budget_error("quadrature tolerance unreachable", r.value, r.error);
  return r;
}

/// Two-sided certificate for the mass near [a, b]: with I the smoothed
/// integral and margin = 2y/(pi delta),
///   mu((a+delta, b-delta]) <= I + margin   and   mu((a-delta, b+delta]) >= I - margin.
/// Shifts apply only to finite endpoints; delta < (b-a)/2 when both are finite.
struct MassBracket {
  double a = 0.0, b = 0.0, y = 0.0, delta = 0.0;
  double smoothed_integral = 0.0;
  double margin = 0.0;
  double inner_upper = 0.0;
  double outer_lower = 0.0;
  double quad_error = 0.0;
};

namespace detail {
inline void validate_bracket_params(double a, double b, double y, double delta) {
  if (!(y > 0.0)) throw invalid_input("smoothing height y must be positive");
  if (!(a < b)) throw invalid_input("bracket requires a < b");
  if (!(delta > 0.0)) throw invalid_input("bracket requires delta > 0");
  if (std::isfinite(a) && std::isfinite(b) && !(delta < 0.5 * (b - a)))
    throw invalid_input("bracket requires delta < (b - a)/2");
}
inline MassBracket assemble_bracket(double a, double b, double y, double delta, double integral,
                                    double quad_error) {
  MassBracket br;
  br.a = a;
  br.b = b;
  br.y = y;
  br.delta = delta;
  br.smoothed_integral = integral;
  br.margin = 2.0 * y / (std::numbers::pi * delta);
  br.inner_upper = integral + br.margin;
  br.outer_lower = integral - br.margin;
  br.quad_error = quad_error;
  return br;
}
}  // namespace detail

inline MassBracket interval_mass_bracket(const AtomicMeasure& mu, double a, double b, double y,
                                         double delta) {
  detail::validate_bracket_params(a, b, y, delta);
  return detail::assemble_bracket(a, b, y, delta, poisson_smoothed_mass(mu, a, b, y), 0.0);
}

inline MassBracket interval_mass_bracket(const TransformEvaluator& ev, double a, double b,
                                         double y, double delta, double tol = 1e-10) {
  detail::validate_bracket_params(a, b, y, delta);
  const QuadratureResult q = smoothed_mass_quadrature(ev, a, b, y, tol);
  return detail::assemble_bracket(a, b, y, delta, q.value, q.error);
}

/// Levy distance between a measure and its Poisson smoothing at height y is
/// at most sqrt(2y/pi) (take delta = sqrt(2y/pi) in the bracket).
inline double levy_smoothing_bound(double y) {
  if (!(y > 0.0)) throw invalid_input("smoothing height y must be positive");
  return std::sqrt(2.0 * y / std::numbers::pi);
}

/// mu convolved with the Cauchy kernel of height y: density, distribution
/// function, and a grid discretization for metric experiments.
class SmoothedMeasure {
 public:
  SmoothedMeasure(AtomicMeasure base, double y) : base_(std::move(base)), y_(y) {
    if (!(y > 0.0)) throw invalid_input("smoothing height y must be positive");
  }

  const AtomicMeasure& base() const { return base_; }
  double smoothing() const { return y_; }

  double density(double x) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < base_.size(); ++i) {
      const double d = x - base_.location(i);
      acc += base_.weight(i) * y_ / (d * d + y_ * y_);
    }
    return acc / std::numbers::pi;
  }
  double cdf(double x) const {
    return poisson_smoothed_mass(base_, -std::numeric_limits<double>::infinity(), x, y_);
  }
  TransformEvaluator evaluator() const { return transform_evaluator(base_); }

  /// Atomic approximation on a uniform grid wide enough that the folded tail
  /// mass is below tail_tol; weights are CDF increments renormalized to the
  /// original total mass.
  AtomicMeasure discretize(double pitch, double tail_tol) const {
    if (!(pitch > 0.0) || !(tail_tol > 0.0))
      throw invalid_input("discretization needs positive pitch and tail tolerance");
    if (base_.empty()) return AtomicMeasure();
    double hull = 0.0;
    for (std::size_t i = 0; i < base_.size(); ++i)
      hull = std::max(hull, std::abs(base_.location(i)));
    const double mass = base_.total_mass();
    const double R = hull + 2.0 * y_ * mass / (std::numbers::pi * tail_tol);
    const std::size_t count = static_cast<std::size_t>(std::ceil(2.0 * R / pitch)) + 1;
    std::vector<Atom> atoms;
    atoms.reserve(count);
    double prev_cdf = 0.0;  // fold the left tail into the first grid atom
    for (std::size_t i = 0; i < count; ++i) {
      const double x = -R + static_cast<double>(i) * pitch;
      const double c = i + 1 == count ? mass : cdf(x);  // right tail into the last
      if (c > prev_cdf) atoms.push_back({x, c - prev_cdf});
      prev_cdf = c;
    }
    AtomicMeasure raw{atoms};
    const double total = raw.total_mass();
    for (auto& a : atoms) a.weight *= mass / total;
    return AtomicMeasure(atoms);
  }

 private:
  AtomicMeasure base_;
  double y_;
};

inline SmoothedMeasure smoothed_measure(const AtomicMeasure& mu, double y) {
  return SmoothedMeasure(mu, y);
}

/// Levy-distance certificate from transform data:
///   d(mu, nu) <= sqrt(8y/pi) + (1/pi) int |Im G_mu - Im G_nu| (x+iy) dx.
/// The integration error (quadrature estimate plus truncated tails) is added
/// on top, so the return value stays a valid upper bound; it must fit within
/// tol or the certificate is refused.  Equal inputs give back exactly the
/// smoothing term.  The integrand has kinks where the two imaginary parts
/// cross, which caps realistic tolerances well above quadrature precision.
inline double levy_cauchy_bound(const AtomicMeasure& mu, const AtomicMeasure& nu, double y,
                                double tol = 1e-6) {
  if (!mu.is_probability() || !nu.is_probability())
    throw invalid_input("levy bound requires probability measures");
  if (!(y > 0.0)) throw invalid_input("smoothing height y must be positive");
  if (mu == nu) return std::sqrt(8.0 * y / std::numbers::pi);

  std::vector<double> peaks = mu.locations();
  peaks.insert(peaks.end(), nu.locations().begin(), nu.locations().end());
  double hull = 0.0;
  for (const double p : peaks) hull = std::max(hull, std::abs(p));
  const TailData tmu = *transform_evaluator(mu).tail;
  const TailData tnu = *transform_evaluator(nu).tail;
  const double X = std::max(detail::tail_cutoff(tmu, y, tol / 8.0, hull),
                            detail::tail_cutoff(tnu, y, tol / 8.0, hull));

  const auto f = [&](double x) {
    const std::complex<double> z(x, y);
    return std::abs(eval_cauchy(mu, z).imag() - eval_cauchy(nu, z).imag()) / std::numbers::pi;
  };
  QuadratureResult q = detail::integrate_segments(f, detail::quad_breakpoints(-X, X, y, peaks));
  // |Im G_mu - Im G_nu| <= -Im G_mu - Im G_nu, so each tail envelope counts
  // once per side.
  q.error += 2.0 * (detail::tail_remainder(tmu, y, X) + detail::tail_remainder(tnu, y, X));
  if (q.error > tol) throw budget_error("quadrature tolerance unreachable", q.value, q.error);
  return std::sqrt(8.0 * y / std::numbers::pi) + q.value + q.error;
}

}  // namespace boolcl
