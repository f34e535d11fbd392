#pragma once

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "boolcl/errors.hpp"
#include "boolcl/polynomial.hpp"

namespace boolcl {

namespace detail {

/// Newton polish of a root seed against p; stops on backward error
/// |p(x)| <= 1e-14 * sum |c_i||x|^i or a vanishing step.  Returns the best
/// iterate seen.
inline std::complex<double> polish_root(const Polynomial<double>& p,
                                        const Polynomial<double>& dp, std::complex<double> x) {
  std::complex<double> best = x;
  double best_res = std::abs(p(x)) / std::max(p.coefficient_scale(std::abs(x)), 1e-300);
  for (int it = 0; it < 50; ++it) {
    const std::complex<double> px = p(x);
    const double scale = std::max(p.coefficient_scale(std::abs(x)), 1e-300);
    const double res = std::abs(px) / scale;
    if (res < best_res) {
      best_res = res;
      best = x;
    }
    if (res <= 1e-14) break;
    const std::complex<double> dpx = dp(x);
    if (std::abs(dpx) == 0.0) break;
    const std::complex<double> step = px / dpx;
    x -= step;
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(x))) {
      if (std::abs(p(x)) / std::max(p.coefficient_scale(std::abs(x)), 1e-300) < best_res) best = x;
      break;
    }
  }
  return best;
}

}  // namespace detail

/// All complex roots of p: companion-matrix eigenvalues (on a root-scaled
/// copy, which keeps the matrix balanced) seed a Newton polish against the
/// original coefficients.
inline std::vector<std::complex<double>> polynomial_roots(const Polynomial<double>& p) {
  if (p.is_zero()) throw invalid_input("root finding on the zero polynomial");
  const int m = p.degree();
  if (m == 0) return {};

  // scale z = s*u so the substituted polynomial has roots of order one
  const double lead = p.leading();
  double s = 0.0;
  for (int i = 0; i < m; ++i) {
    const double c = std::abs(p.coeff(i) / lead);
    if (c > 0.0) s = std::max(s, std::pow(c, 1.0 / (m - i)));
  }
  if (s == 0.0) return std::vector<std::complex<double>>(static_cast<std::size_t>(m), {0.0, 0.0});

  std::vector<double> b(static_cast<std::size_t>(m) + 1);
  double pw = 1.0;  // s^i / (lead * s^m), accumulated bottom-up
  for (int i = 0; i <= m; ++i) {
    b[static_cast<std::size_t>(i)] = p.coeff(i) * pw;
    pw *= s;
  }
  const double bm = b[static_cast<std::size_t>(m)];
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) comp(i, m - 1) = -b[static_cast<std::size_t>(i)] / bm;
  for (int i = 1; i < m; ++i) comp(i, i - 1) = 1.0;

  Eigen::EigenSolver<Eigen::MatrixXd> solver(comp);
  if (solver.info() != Eigen::Success) throw numeric_error("eigenvalue iteration failed");

  const Polynomial<double> dp = p.derivative();
  std::vector<std::complex<double>> roots;
  roots.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const std::complex<double> seed(solver.eigenvalues()[i].real() * s,
                                    solver.eigenvalues()[i].imag() * s);
    roots.push_back(detail::polish_root(p, dp, seed));
  }
  return roots;
}

/// Roots accepted as real when |Im| <= 1e-9 (1 + |Re|); anything else throws.
/// Returned in ascending order.
inline std::vector<double> real_roots_checked(const Polynomial<double>& p, const char* context) {
  std::vector<double> out;
  for (const auto& r : polynomial_roots(p)) {
    if (std::abs(r.imag()) > 1e-9 * (1.0 + std::abs(r.real())))
      throw numeric_error(std::string(context) + ": complex root " + std::to_string(r.real()) +
                          (r.imag() < 0 ? "-" : "+") + std::to_string(std::abs(r.imag())) + "i");
    out.push_back(r.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace boolcl
