#pragma once

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <numbers>
#include <optional>
#include <thread>
#include <vector>

#include "boolcl/boolean.hpp"
#include "boolcl/errors.hpp"
#include "boolcl/inversion.hpp"
#include "boolcl/measure.hpp"
#include "boolcl/transform.hpp"

namespace boolcl {

/// Explicit constants governing the convergence-rate bound.  Admissible
/// smoothing height is tied to the sample size by y = 1/n.
struct ConstantLedger {
  double alpha = 0.0;
  double K = 0.0;
  double C = 0.0;
  long long n_min = 0;
  static constexpr const char* y_rule = "y = 1/n";
};

/// C defaults to M + 1 where
///   M = max{5, |alpha| + 2, 4(K+1)^2, 1 + (30K+1)/0.09},
/// and n_min = ceil(max{400 alpha^2, 600 K, 16 C^2}) + 1.  An override for C
/// must still exceed M.
inline ConstantLedger rate_constants(const ReprData& repr,
                                     std::optional<double> c_override = std::nullopt) {
  ConstantLedger lg;
  lg.alpha = repr.alpha;
  lg.K = repr.K;
  const double M = std::max({5.0, std::abs(lg.alpha) + 2.0, 4.0 * (lg.K + 1.0) * (lg.K + 1.0),
                             1.0 + (30.0 * lg.K + 1.0) / 0.09});
  if (c_override) {
    if (!(*c_override > M)) throw invalid_input("constant override must exceed the default floor");
    lg.C = *c_override;
  } else {
    lg.C = M + 1.0;
  }
  const double n_req =
      std::max({400.0 * lg.alpha * lg.alpha, 600.0 * lg.K, 16.0 * lg.C * lg.C});
  lg.n_min = static_cast<long long>(std::ceil(n_req)) + 1;
  return lg;
}

/// Smoothed mass of the normalized n-fold convolution over the three regions
/// that drive the rate proof, against their closed-form budgets.
struct RegionIntegrals {
  long long n = 0;
  double left_tail = 0.0;
  double right_tail = 0.0;
  double middle = 0.0;
  double tail_bound = 0.0;    // 1/(pi sqrt(n)), each tail separately
  double middle_bound = 0.0;  // 2C/(3 sqrt(n)) + 6/(pi sqrt(n))
  bool pass = false;
};

inline RegionIntegrals region_integral_checks(const AtomicMeasure& mu, long long n,
                                              const ConstantLedger& lg) {
  if (n <= lg.n_min) throw invalid_input("n must exceed the admissibility threshold n_min");
  const AtomicMeasure mu_n = clt_normalize(mu, n);
  const double s = std::sqrt(static_cast<double>(n));
  const double y = 1.0 / static_cast<double>(n);
  const double inf = std::numeric_limits<double>::infinity();
  RegionIntegrals r;
  r.n = n;
  r.left_tail = poisson_smoothed_mass(mu_n, -inf, -1.0 - lg.C / s, y);
  r.right_tail = poisson_smoothed_mass(mu_n, 1.0 + lg.C / s, inf, y);
  r.middle = poisson_smoothed_mass(mu_n, -1.0 + lg.C / s, 1.0 - lg.C / s, y);
  r.tail_bound = 1.0 / (std::numbers::pi * s);
  r.middle_bound = 2.0 * lg.C / (3.0 * s) + 6.0 / (std::numbers::pi * s);
  const double slack = 1e-12;
  r.pass = r.left_tail <= r.tail_bound + slack && r.right_tail <= r.tail_bound + slack &&
           r.middle <= r.middle_bound + slack;
  return r;
}

struct CltRow {
  long long n = 0;
  double d_lev = 0.0;
  double bound = 0.0;  // 3.5 (C + 2) / sqrt(n)
  double sqrt_n_d = 0.0;
};

struct RateFit {
  double slope = 0.0;
  double stderr_ = 0.0;
};

struct CltReport {
  ConstantLedger ledger;
  std::vector<CltRow> rows;
  std::optional<RateFit> fit;
  bool degenerate = false;  // every distance at the resolution floor
};

namespace detail {

inline unsigned thread_cap() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("BOOLCL_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 0) return v == 0 ? hw : static_cast<unsigned>(v);
  }
  return hw;
}

template <class F>
void parallel_for(std::size_t count, F&& f) {
  const unsigned threads = std::min<std::size_t>(thread_cap(), count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  const auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace detail

/// Log-log least squares of d_lev against n, restricted to rows with
/// n > n_min and positive distance; needs at least four such rows. When the
/// admissibility threshold exceeds every sampled n the restriction would
/// leave nothing to fit, so it falls back to all rows with positive distance.
inline std::optional<RateFit> rate_fit(const ConstantLedger& lg, const std::vector<CltRow>& rows) {
  std::vector<double> lx, ly;
  for (int pass = 0; pass < 2 && lx.size() < 4; ++pass) {
    lx.clear();
    ly.clear();
    for (const CltRow& r : rows) {
      if ((pass > 0 || r.n > lg.n_min) && r.d_lev > 0.0) {
        lx.push_back(std::log(static_cast<double>(r.n)));
        ly.push_back(std::log(r.d_lev));
      }
    }
  }
  const std::size_t m = lx.size();
  if (m < 4) return std::nullopt;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (!(sxx > 0.0)) return std::nullopt;
  RateFit fit;
  fit.slope = sxy / sxx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double resid = ly[i] - my - fit.slope * (lx[i] - mx);
    ssr += resid * resid;
  }
  fit.stderr_ = m > 2 ? std::sqrt(ssr / (static_cast<double>(m - 2) * sxx)) : 0.0;
  return fit;
}

/// For each n: Levy distance between the normalized n-fold convolution and
/// the symmetric Bernoulli limit, next to the proved bound 3.5(C+2)/sqrt(n).
/// Rows are independent and computed in parallel (BOOLCL_THREADS caps the
/// pool; 0 or unset means hardware concurrency).
inline CltReport clt_rate_experiment(const AtomicMeasure& mu, const std::vector<long long>& ns,
                                     std::optional<double> c_override = std::nullopt) {
  if (ns.empty()) throw invalid_input("rate experiment needs at least one sample size");
  for (const long long n : ns)
    if (n < 1) throw invalid_input("sample sizes must be positive");
  const ReprData repr = extract_representation(mu);
  CltReport report;
  report.ledger = rate_constants(repr, c_override);
  report.rows.resize(ns.size());
  const AtomicMeasure limit = AtomicMeasure::bernoulli();
  detail::parallel_for(ns.size(), [&](std::size_t i) {
    const long long n = ns[i];
    const AtomicMeasure mu_n = clt_normalize(mu, n);
    CltRow row;
    row.n = n;
    row.d_lev = levy_distance(mu_n, limit);
    row.bound = 3.5 * (report.ledger.C + 2.0) / std::sqrt(static_cast<double>(n));
    row.sqrt_n_d = std::sqrt(static_cast<double>(n)) * row.d_lev;
    report.rows[i] = row;
  });
  report.degenerate = true;
  for (const CltRow& r : report.rows)
    if (r.d_lev > 1e-12) report.degenerate = false;
  report.fit = rate_fit(report.ledger, report.rows);
  return report;
}

/// Two-atom probability measure with mean zero and unit variance carrying
/// weight p at a = -sqrt((1-p)/p) and 1-p at b = -1/a.
inline AtomicMeasure sharp_two_atom(double p) {
  if (!(p > 0.0 && p < 1.0)) throw invalid_input("weight parameter must lie in (0, 1)");
  const double a = -std::sqrt((1.0 - p) / p);
  const double b = -1.0 / a;
  // Weights recomputed from the realized locations so the mean vanishes at
  // working precision even after the square root rounds.
  const double wa = b / (b - a);
  const double wb = -a / (b - a);
  return AtomicMeasure(std::vector<Atom>{{a, wa}, {b, wb}});
}

}  // namespace boolcl
