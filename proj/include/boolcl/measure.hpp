#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "boolcl/errors.hpp"
#include "boolcl/rational.hpp"

namespace boolcl {

struct Atom {
  double location = 0.0;
  double weight = 0.0;
};

struct ExactAtom {
  Rational location;
  Rational weight;
};

/// Right-continuous distribution function of an atomic measure, with its
/// left limits.  value(x) is the mass of (-inf, x], left_limit(x) of (-inf, x).
class Cdf {
 public:
  Cdf(std::vector<double> locations, std::vector<double> cumulative)
      : loc_(std::move(locations)), cum_(std::move(cumulative)) {}

  double value(double x) const {
    const auto it = std::upper_bound(loc_.begin(), loc_.end(), x);
    return cum_[static_cast<std::size_t>(it - loc_.begin())];
  }
  double left_limit(double x) const {
    const auto it = std::lower_bound(loc_.begin(), loc_.end(), x);
    return cum_[static_cast<std::size_t>(it - loc_.begin())];
  }
  double total() const { return cum_.back(); }

 private:
  std::vector<double> loc_;
  std::vector<double> cum_;  // cum_[i] = mass of the first i atoms; size loc_.size()+1
};

/// Finitely supported non-negative measure: ordered atoms with strictly
/// positive weights.  Atom data is held as exact rationals (doubles convert
/// exactly), so transform algebra downstream loses nothing; double mirrors
/// serve the numeric paths.  An empty atom list is the zero measure.
class AtomicMeasure {
 public:
  AtomicMeasure() = default;

  explicit AtomicMeasure(const std::vector<Atom>& atoms) : AtomicMeasure(to_exact(atoms)) {}

  explicit AtomicMeasure(std::vector<ExactAtom> atoms) {
    for (const auto& a : atoms)
      if (!(a.weight > 0)) throw invalid_input("atom weights must be strictly positive");
    std::sort(atoms.begin(), atoms.end(),
              [](const ExactAtom& a, const ExactAtom& b) { return a.location < b.location; });
    // merge locations closer than 1e-14 (summing weights, keeping the first)
    for (auto& a : atoms) {
      const double t = to_double(a.location);
      if (!exact_.empty() && t - to_double(exact_.back().location) < 1e-14)
        exact_.back().weight += a.weight;
      else
        exact_.push_back(std::move(a));
    }
    loc_.reserve(exact_.size());
    w_.reserve(exact_.size());
    cum_.reserve(exact_.size() + 1);
    cum_.push_back(0.0);
    Rational running(0);
    for (const auto& a : exact_) {
      loc_.push_back(to_double(a.location));
      w_.push_back(to_double(a.weight));
      running += a.weight;
      cum_.push_back(to_double(running));
    }
    total_ = std::move(running);
  }

  static AtomicMeasure point_mass(double t) { return AtomicMeasure(std::vector<Atom>{{t, 1.0}}); }
  /// Symmetric Bernoulli: mass 1/2 at -1 and +1.
  static AtomicMeasure bernoulli() {
    return AtomicMeasure(std::vector<Atom>{{-1.0, 0.5}, {1.0, 0.5}});
  }

  std::size_t size() const { return exact_.size(); }
  bool empty() const { return exact_.empty(); }
  const std::vector<ExactAtom>& exact_atoms() const { return exact_; }
  double location(std::size_t i) const { return loc_[i]; }
  double weight(std::size_t i) const { return w_[i]; }
  const std::vector<double>& locations() const { return loc_; }
  const std::vector<double>& weights() const { return w_; }

  std::vector<Atom> atoms() const {
    std::vector<Atom> v(exact_.size());
    for (std::size_t i = 0; i < exact_.size(); ++i) v[i] = {loc_[i], w_[i]};
    return v;
  }

  double total_mass() const { return to_double(total_); }
  const Rational& total_mass_exact() const { return total_; }
  bool is_probability(double tol = 1e-12) const { return std::abs(total_mass() - 1.0) <= tol; }

  /// Same atoms with weights exactly rescaled to total mass one.  Inputs
  /// given in floating point carry mass defects of a few ulp; operations
  /// whose precondition is a probability measure divide the defect out so it
  /// cannot amplify downstream.
  AtomicMeasure normalized_exact() const {
    if (total_ == 0) throw invalid_input("cannot normalize a measure with zero mass");
    if (total_ == 1) return *this;
    std::vector<ExactAtom> atoms = exact_;
    for (auto& a : atoms) a.weight /= total_;
    return AtomicMeasure(std::move(atoms));
  }

  Rational moment_exact(int k) const {
    Rational acc(0);
    for (const auto& a : exact_) {
      Rational p(1);
      for (int j = 0; j < k; ++j) p *= a.location;
      acc += a.weight * p;
    }
    return acc;
  }
  /// sum w_j t_j^k (finite sum, evaluated exactly and rounded once)
  double moment(int k) const { return to_double(moment_exact(k)); }
  /// sum w_j |t_j|^k
  double abs_moment(int k) const {
    Rational acc(0);
    for (const auto& a : exact_) {
      Rational p(1);
      for (int j = 0; j < k; ++j) p *= a.location;
      acc += a.weight * abs(p);
    }
    return to_double(acc);
  }

  Cdf cdf() const {
    std::vector<double> cum = cum_;
    if (cum.empty()) cum.push_back(0.0);
    return Cdf(loc_, std::move(cum));
  }

  /// Mass of the half-open interval (lo, hi]; endpoints may be infinite.
  double mass_interval(double lo, double hi) const {
    if (!(lo < hi)) return 0.0;
    const auto first = std::upper_bound(loc_.begin(), loc_.end(), lo);
    const auto last = std::upper_bound(loc_.begin(), loc_.end(), hi);
    return cum_at(last) - cum_at(first);
  }

  friend bool operator==(const AtomicMeasure& a, const AtomicMeasure& b) {
    if (a.exact_.size() != b.exact_.size()) return false;
    for (std::size_t i = 0; i < a.exact_.size(); ++i)
      if (a.exact_[i].location != b.exact_[i].location || a.exact_[i].weight != b.exact_[i].weight)
        return false;
    return true;
  }

 private:
  static std::vector<ExactAtom> to_exact(const std::vector<Atom>& atoms) {
    std::vector<ExactAtom> v;
    v.reserve(atoms.size());
    for (const auto& a : atoms) v.push_back({exact_rational(a.location), exact_rational(a.weight)});
    return v;
  }
  double cum_at(std::vector<double>::const_iterator it) const {
    return cum_.empty() ? 0.0 : cum_[static_cast<std::size_t>(it - loc_.begin())];
  }

  std::vector<ExactAtom> exact_;
  std::vector<double> loc_, w_;
  std::vector<double> cum_;  // prefix masses, exact partial sums rounded per entry
  Rational total_ = Rational(0);
};

/// Pushforward under t -> a*t, a > 0.  Weights stay exact; locations are
/// scaled in double precision.
inline AtomicMeasure dilate(const AtomicMeasure& mu, double a) {
  if (!(a > 0.0)) throw invalid_input("dilation factor must be positive");
  std::vector<ExactAtom> atoms;
  atoms.reserve(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i)
    atoms.push_back({exact_rational(mu.location(i) * a), mu.exact_atoms()[i].weight});
  return AtomicMeasure(std::move(atoms));
}

namespace detail {

/// Levy feasibility of eps: F(x-eps)-eps <= G(x) <= F(x+eps)+eps for all x.
/// Both sides are step functions, so it is enough to test every jump point
/// of every term, in right-value and left-limit form.
inline bool levy_feasible(const Cdf& F, const Cdf& G, const std::vector<double>& locs,
                          double eps) {
  const double shifts[3] = {-eps, 0.0, eps};
  for (const double t : locs) {
    for (const double s : shifts) {
      const double x = t + s;
      if (G.value(x) > F.value(x + eps) + eps) return false;
      if (G.left_limit(x) > F.left_limit(x + eps) + eps) return false;
      if (F.value(x - eps) - eps > G.value(x)) return false;
      if (F.left_limit(x - eps) - eps > G.left_limit(x)) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Levy distance between probability measures: the infimum of feasible eps,
/// found by bisection on [0,1] to absolute tolerance 1e-12 (the returned
/// value is a feasible eps, so it never understates the distance; exactly 0
/// is returned when eps = 1e-13 is already feasible).
inline double levy_distance(const AtomicMeasure& mu, const AtomicMeasure& nu) {
  if (!mu.is_probability() || !nu.is_probability())
    throw invalid_input("levy distance requires probability measures");
  const Cdf F = mu.cdf(), G = nu.cdf();
  std::vector<double> locs;
  locs.reserve(mu.size() + nu.size());
  locs.insert(locs.end(), mu.locations().begin(), mu.locations().end());
  locs.insert(locs.end(), nu.locations().begin(), nu.locations().end());

  const auto feasible = [&](double eps) { return detail::levy_feasible(F, G, locs, eps); };
  if (feasible(1e-13)) return 0.0;
  double lo = 1e-13, hi = 1.0;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }
  return hi;
}

struct ConcentrationBound {
  bool concentrated = false;
  double epsilon = std::numeric_limits<double>::quiet_NaN();
  double bound = std::numeric_limits<double>::quiet_NaN();  // 3.5 * epsilon
};

/// Smallest eps in (0,1) with mu((-1-eps,-1+eps) u (1-eps,1+eps)) >= 1-eps,
/// as an infimum over the finitely many breakpoints, and the implied bound
/// (7/2) eps on the Levy distance to the symmetric Bernoulli law.
inline ConcentrationBound bernoulli_concentration(const AtomicMeasure& mu) {
  if (!mu.is_probability()) throw invalid_input("concentration requires a probability measure");
  if (std::abs(mu.moment(1)) > 1e-9 || std::abs(mu.moment(2) - 1.0) > 1e-9)
    throw invalid_input("concentration requires mean 0 and variance 1");

  std::vector<std::pair<double, double>> dist_weight;  // (distance to nearest of +-1, weight)
  dist_weight.reserve(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double t = mu.location(i);
    dist_weight.push_back({std::min(std::abs(t - 1.0), std::abs(t + 1.0)), mu.weight(i)});
  }
  std::sort(dist_weight.begin(), dist_weight.end());

  // breakpoints of eps -> included mass; the atom at distance d enters only
  // for eps > d (open intervals)
  std::vector<double> points{0.0};
  for (const auto& [d, w] : dist_weight)
    if (d < 1.0 && d != points.back()) points.push_back(d);

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double lo = points[i];
    const double hi = i + 1 < points.size() ? points[i + 1] : 1.0;
    double mass = 0.0;
    for (const auto& [d, w] : dist_weight)
      if (d <= lo) mass += w;
    const double cand = std::max(lo, 1.0 - mass);
    if (cand <= hi && cand < 1.0) best = std::min(best, cand);
  }
  if (!std::isfinite(best)) return ConcentrationBound{};
  return ConcentrationBound{true, best, 3.5 * best};
}

}  // namespace boolcl
