#pragma once

#include <algorithm>
#include <complex>
#include <vector>

#include "boolcl/errors.hpp"
#include "boolcl/rational.hpp"

namespace boolcl {

/// Dense univariate polynomial with coefficients stored in ascending order:
/// coefficients()[i] multiplies z^i.  The zero polynomial has no coefficients
/// and degree -1.  T is double or Rational; arithmetic never trims anything
/// but exact zeros, so rational pipelines stay exact.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coefficients) : coef_(std::move(coefficients)) { trim(); }

  static Polynomial zero() { return Polynomial(); }
  static Polynomial constant(T c) { return Polynomial(std::vector<T>{std::move(c)}); }
  static Polynomial x() { return Polynomial(std::vector<T>{T(0), T(1)}); }
  static Polynomial monomial(int degree, T c) {
    std::vector<T> v(static_cast<std::size_t>(degree) + 1, T(0));
    v.back() = std::move(c);
    return Polynomial(std::move(v));
  }

  int degree() const { return static_cast<int>(coef_.size()) - 1; }
  bool is_zero() const { return coef_.empty(); }
  const std::vector<T>& coefficients() const { return coef_; }

  T coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(coef_.size())) return T(0);
    return coef_[static_cast<std::size_t>(i)];
  }
  const T& leading() const { return coef_.back(); }  // requires nonzero

  Polynomial& operator+=(const Polynomial& o) {
    if (coef_.size() < o.coef_.size()) coef_.resize(o.coef_.size(), T(0));
    for (std::size_t i = 0; i < o.coef_.size(); ++i) coef_[i] += o.coef_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (coef_.size() < o.coef_.size()) coef_.resize(o.coef_.size(), T(0));
    for (std::size_t i = 0; i < o.coef_.size(); ++i) coef_[i] -= o.coef_[i];
    trim();
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<T> c(a.coef_.size() + b.coef_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.coef_.size(); ++i)
      for (std::size_t j = 0; j < b.coef_.size(); ++j) c[i + j] += a.coef_[i] * b.coef_[j];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(Polynomial a, const T& s) {
    for (auto& c : a.coef_) c *= s;
    a.trim();
    return a;
  }
  friend Polynomial operator*(const T& s, Polynomial a) { return std::move(a) * s; }
  Polynomial operator-() const {
    Polynomial r(*this);
    for (auto& c : r.coef_) c = -c;
    return r;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coef_ == b.coef_; }

  Polynomial derivative() const {
    if (coef_.size() <= 1) return Polynomial();
    std::vector<T> d(coef_.size() - 1);
    for (std::size_t i = 1; i < coef_.size(); ++i) d[i - 1] = coef_[i] * T(static_cast<int>(i));
    return Polynomial(std::move(d));
  }

  T operator()(const T& z) const {  // Horner
    T acc(0);
    for (auto it = coef_.rbegin(); it != coef_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }
  std::complex<double> operator()(const std::complex<double>& z) const {
    std::complex<double> acc(0.0, 0.0);
    for (auto it = coef_.rbegin(); it != coef_.rend(); ++it) acc = acc * z + to_double(*it);
    return acc;
  }

  /// Sum |c_i| r^i; backward-error scale for root residuals at |z| = r.
  double coefficient_scale(double r) const {
    double acc = 0.0;
    for (auto it = coef_.rbegin(); it != coef_.rend(); ++it)
      acc = acc * r + std::abs(to_double(*it));
    return acc;
  }

  double max_abs_coefficient() const {
    double m = 0.0;
    for (const auto& c : coef_) m = std::max(m, std::abs(to_double(c)));
    return m;
  }

  Polynomial& make_monic() {
    if (is_zero()) throw numeric_error("zero polynomial cannot be made monic");
    const T lead = coef_.back();
    for (auto& c : coef_) c /= lead;
    return *this;
  }

  Polynomial<double> to_double_poly() const {
    std::vector<double> c(coef_.size());
    for (std::size_t i = 0; i < coef_.size(); ++i) c[i] = to_double(coef_[i]);
    return Polynomial<double>(std::move(c));
  }

  /// Euclidean division, exact coefficient types only.
  static void divmod(const Polynomial& a, const Polynomial& b, Polynomial& q, Polynomial& r) {
    if (b.is_zero()) throw numeric_error("polynomial division by zero");
    std::vector<T> rem = a.coef_;
    const int db = b.degree();
    std::vector<T> quo;
    if (a.degree() >= db) quo.assign(static_cast<std::size_t>(a.degree() - db) + 1, T(0));
    for (int d = a.degree(); d >= db; --d) {
      const T& top = rem[static_cast<std::size_t>(d)];
      if (top == T(0)) continue;
      const T f = top / b.coef_.back();
      quo[static_cast<std::size_t>(d - db)] = f;
      for (int i = 0; i <= db; ++i)
        rem[static_cast<std::size_t>(d - db + i)] -= f * b.coef_[static_cast<std::size_t>(i)];
      rem[static_cast<std::size_t>(d)] = T(0);  // kill rounding of the cancelled top term
    }
    q = Polynomial(std::move(quo));
    r = Polynomial(std::move(rem));
  }

  /// Monic gcd by the Euclidean algorithm, exact coefficient types only.
  static Polynomial gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
      Polynomial q, r;
      divmod(a, b, q, r);
      if (!r.is_zero()) r.make_monic();  // keeps coefficient growth down
      a = std::move(b);
      b = std::move(r);
    }
    if (!a.is_zero()) a.make_monic();
    return a;
  }

 private:
  void trim() {
    while (!coef_.empty() && coef_.back() == T(0)) coef_.pop_back();
  }

  std::vector<T> coef_;
};

}  // namespace boolcl
