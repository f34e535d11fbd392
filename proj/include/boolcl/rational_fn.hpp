#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "boolcl/errors.hpp"
#include "boolcl/polynomial.hpp"

namespace boolcl {

namespace detail {
template <class T>
inline constexpr bool is_exact_scalar = false;
template <>
inline constexpr bool is_exact_scalar<Rational> = true;
}  // namespace detail

/// Ratio of polynomials, kept normalized: denominator monic and, for exact
/// coefficients, common factors cancelled.  The zero function is num = 0,
/// den = 1.
template <class T>
class RationalFn {
 public:
  RationalFn() : num_(), den_(Polynomial<T>::constant(T(1))) {}
  RationalFn(Polynomial<T> num, Polynomial<T> den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw invalid_input("rational function with zero denominator");
    normalize();
  }

  static RationalFn zero() { return RationalFn(); }
  static RationalFn from_poly(Polynomial<T> p) {
    return RationalFn(std::move(p), Polynomial<T>::constant(T(1)));
  }
  static RationalFn x() { return from_poly(Polynomial<T>::x()); }

  const Polynomial<T>& num() const { return num_; }
  const Polynomial<T>& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RationalFn reciprocal() const {
    if (is_zero()) throw numeric_error("reciprocal of the zero rational function");
    return RationalFn(den_, num_);
  }

  friend RationalFn operator+(const RationalFn& a, const RationalFn& b) {
    return RationalFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFn operator-(const RationalFn& a, const RationalFn& b) {
    return RationalFn(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFn operator*(const RationalFn& a, const RationalFn& b) {
    return RationalFn(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFn operator*(const RationalFn& a, const T& s) {
    return RationalFn(a.num_ * s, a.den_);
  }
  friend RationalFn operator+(const RationalFn& a, const Polynomial<T>& p) {
    return RationalFn(a.num_ + p * a.den_, a.den_);
  }
  friend RationalFn operator-(const RationalFn& a, const Polynomial<T>& p) {
    return RationalFn(a.num_ - p * a.den_, a.den_);
  }
  friend RationalFn operator-(const Polynomial<T>& p, const RationalFn& a) {
    return RationalFn(p * a.den_ - a.num_, a.den_);
  }
  friend bool operator==(const RationalFn& a, const RationalFn& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::complex<double> operator()(const std::complex<double>& z) const {
    const std::complex<double> d = den_(z);
    if (std::abs(d) == 0.0) throw numeric_error("rational function evaluated at a pole");
    return num_(z) / d;
  }

  RationalFn<double> to_double_fn() const {
    return RationalFn<double>(num_.to_double_poly(), den_.to_double_poly());
  }

  /// Coefficients c_0..c_{count-1} of the expansion sum c_k z^{-k-1} at
  /// infinity.  Requires deg num < deg den (the function vanishes at
  /// infinity); for a Cauchy transform these are the measure's moments.
  std::vector<T> series_moments(int count) const {
    if (num_.degree() >= den_.degree())
      throw invalid_input("series expansion requires a function vanishing at infinity");
    const int m = den_.degree();
    std::vector<T> c(static_cast<std::size_t>(count), T(0));
    for (int j = 0; j < count; ++j) {
      // match coefficient of z^{m-1-j} in num = (sum c_k z^{-k-1}) * den
      T acc = num_.coeff(m - 1 - j);
      for (int k = 0; k < j; ++k)
        acc -= c[static_cast<std::size_t>(k)] * den_.coeff(m - 1 - j + k + 1);
      c[static_cast<std::size_t>(j)] = acc / den_.leading();
    }
    return c;
  }

 private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = Polynomial<T>::constant(T(1));
      return;
    }
    if constexpr (detail::is_exact_scalar<T>) {
      Polynomial<T> g = Polynomial<T>::gcd(num_, den_);
      if (g.degree() > 0) {
        Polynomial<T> q, r;
        Polynomial<T>::divmod(num_, g, q, r);
        num_ = std::move(q);
        Polynomial<T>::divmod(den_, g, q, r);
        den_ = std::move(q);
      }
    }
    const T lead = den_.leading();
    if (!(lead == T(1))) {
      num_ = num_ * (T(1) / lead);
      den_.make_monic();
    }
  }

  Polynomial<T> num_, den_;
};

}  // namespace boolcl
