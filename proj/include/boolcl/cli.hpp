#pragma once

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "boolcl/boolean.hpp"
#include "boolcl/errors.hpp"
#include "boolcl/experiments.hpp"
#include "boolcl/inversion.hpp"
#include "boolcl/io.hpp"
#include "boolcl/measure.hpp"
#include "boolcl/transform.hpp"

namespace boolcl::cli {

namespace detail {

inline int fail(const char* kind, const std::string& message, int code,
                const budget_error* budget = nullptr) {
  json err{{"kind", kind}, {"message", message}};
  if (budget) {
    err["partial"] = budget->partial;
    err["error_estimate"] = budget->error_estimate;
  }
  std::cerr << json{{"error", err}}.dump() << '\n';
  return code;
}

inline void emit(const json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw invalid_input("cannot open output file: " + path);
  out << j.dump(2) << '\n';
}

inline double parse_endpoint(const std::string& s) {
  if (s == "inf" || s == "+inf" || s == "infinity" || s == "+infinity")
    return std::numeric_limits<double>::infinity();
  if (s == "-inf" || s == "-infinity") return -std::numeric_limits<double>::infinity();
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos == s.size()) return v;
  } catch (...) {
  }
  throw invalid_input("cannot parse interval endpoint: " + s);
}

inline std::vector<long long> geometric_grid(long long start, long long end, long long factor) {
  if (start < 1) throw invalid_input("--n-start must be at least 1");
  if (end < start) throw invalid_input("--n-end must be at least --n-start");
  if (factor < 2) throw invalid_input("--geometric factor must be at least 2");
  std::vector<long long> ns;
  for (long long n = start;; n *= factor) {
    ns.push_back(n);
    if (n > end / factor || n * factor > end) break;
  }
  return ns;
}

}  // namespace detail

inline int run(int argc, const char* const* argv) {
  CLI::App app{"exact Boolean convolution of atomic measures, certified Cauchy-transform "
               "inversion, and central-limit rate experiments"};
  app.require_subcommand(1);

  std::string path_a, path_b, out_path, svg_path, a_str, b_str;
  double y = 0.0, delta = 0.0;
  long long n = 0, n_start = 0, n_end = 0, factor = 2;
  bool normalize = false, via_cauchy = false;
  std::optional<double> c_override;

  auto* convolve = app.add_subcommand("convolve", "Boolean convolution of two measures");
  convolve->add_option("a", path_a, "first measure (JSON)")->required();
  convolve->add_option("b", path_b, "second measure (JSON)")->required();
  convolve->add_option("-o,--output", out_path, "output file (default: stdout)");

  auto* power = app.add_subcommand("power", "n-fold Boolean convolution of one measure");
  power->add_option("a", path_a, "measure (JSON)")->required();
  power->add_option("-n", n, "convolution order")->required();
  power->add_flag("--normalize", normalize, "rescale by 1/sqrt(n) afterwards");
  power->add_option("-o,--output", out_path, "output file (default: stdout)");

  auto* clt = app.add_subcommand("clt", "Levy-distance convergence-rate experiment");
  clt->add_option("a", path_a, "measure (JSON)")->required();
  clt->add_option("--n-start", n_start, "first sample size")->required();
  clt->add_option("--n-end", n_end, "last sample size")->required();
  clt->add_option("--geometric", factor, "sample-size ratio (default 2)");
  clt->add_option("-o,--output", out_path, "output CSV path")->required();
  clt->add_option("--svg", svg_path, "also write a log-log chart");
  clt->add_option("--c-override", c_override, "replace the default constant C");

  auto* invert = app.add_subcommand("invert", "two-sided mass certificate for an interval");
  invert->add_option("measure", path_a, "measure (JSON)")->required();
  invert->add_option("-a,--left", a_str, "left endpoint (number or -inf)")->required();
  invert->add_option("-b,--right", b_str, "right endpoint (number or inf)")->required();
  invert->add_option("-y", y, "smoothing height")->required();
  invert->add_option("-d,--delta", delta, "bracket half-width")->required();
  invert->add_option("-o,--output", out_path, "output file (default: stdout)");

  auto* levy = app.add_subcommand("levy", "Levy distance between two measures");
  levy->add_option("a", path_a, "first measure (JSON)")->required();
  levy->add_option("b", path_b, "second measure (JSON)")->required();
  levy->add_flag("--via-cauchy", via_cauchy, "also certify through the smoothed transforms");
  levy->add_option("-y", y, "smoothing height for --via-cauchy");

  auto* constants = app.add_subcommand("constants", "rate constants for a standardized measure");
  constants->add_option("a", path_a, "measure (JSON)")->required();
  constants->add_option("--c-override", c_override, "replace the default constant C");

  auto* lemmas = app.add_subcommand("lemmas", "region-integral checks at one sample size");
  lemmas->add_option("a", path_a, "measure (JSON)")->required();
  lemmas->add_option("-n", n, "sample size (must exceed n_min)")->required();
  lemmas->add_option("--c-override", c_override, "replace the default constant C");

  try {
    app.parse(argc, argv);

    if (convolve->parsed()) {
      const AtomicMeasure result =
          boolean_convolve(read_measure_file(path_a), read_measure_file(path_b));
      detail::emit(measure_to_json(result), out_path);
    } else if (power->parsed()) {
      const AtomicMeasure mu = read_measure_file(path_a);
      const AtomicMeasure result = normalize ? clt_normalize(mu, n) : boolean_power(mu, n);
      detail::emit(measure_to_json(result), out_path);
    } else if (clt->parsed()) {
      const AtomicMeasure mu = read_measure_file(path_a);
      const CltReport report =
          clt_rate_experiment(mu, detail::geometric_grid(n_start, n_end, factor), c_override);
      std::ofstream csv(out_path);
      if (!csv) throw invalid_input("cannot open output file: " + out_path);
      write_report_csv(report, csv);
      if (!svg_path.empty()) {
        std::ofstream svg(svg_path);
        if (!svg) throw invalid_input("cannot open output file: " + svg_path);
        write_rate_svg(report, svg);
      }
      std::cout << report_summary(report).dump(2) << '\n';
    } else if (invert->parsed()) {
      const MassBracket br =
          interval_mass_bracket(read_measure_file(path_a), detail::parse_endpoint(a_str),
                                detail::parse_endpoint(b_str), y, delta);
      detail::emit(bracket_to_json(br), out_path);
    } else if (levy->parsed()) {
      const AtomicMeasure mu = read_measure_file(path_a);
      const AtomicMeasure nu = read_measure_file(path_b);
      json j{{"levy", levy_distance(mu, nu)}};
      if (via_cauchy) {
        if (!(y > 0.0)) throw invalid_input("--via-cauchy requires -y > 0");
        j["y"] = y;
        j["cauchy_bound"] = levy_cauchy_bound(mu, nu, y);
      }
      std::cout << j.dump(2) << '\n';
    } else if (constants->parsed()) {
      const ConstantLedger lg =
          rate_constants(extract_representation(read_measure_file(path_a)), c_override);
      std::cout << json{{"alpha", lg.alpha}, {"K", lg.K}, {"C", lg.C}, {"n_min", lg.n_min}}
                       .dump(2)
                << '\n';
    } else if (lemmas->parsed()) {
      const AtomicMeasure mu = read_measure_file(path_a);
      const ConstantLedger lg = rate_constants(extract_representation(mu), c_override);
      const RegionIntegrals r = region_integral_checks(mu, n, lg);
      std::cout << json{{"n", r.n},
                        {"C", lg.C},
                        {"left_tail", r.left_tail},
                        {"right_tail", r.right_tail},
                        {"middle", r.middle},
                        {"tail_bound", r.tail_bound},
                        {"middle_bound", r.middle_bound},
                        {"pass", r.pass}}
                       .dump(2)
                << '\n';
    }
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return detail::fail("validation", e.what(), 2);
  } catch (const budget_error& e) {
    return detail::fail("numeric", e.what(), 1, &e);
  } catch (const invalid_input& e) {
    return detail::fail("validation", e.what(), 2);
  } catch (const numeric_error& e) {
    return detail::fail("numeric", e.what(), 1);
  } catch (const std::exception& e) {
    return detail::fail("internal", e.what(), 1);
  }
}

inline int run(const std::vector<std::string>& args) {
  std::vector<std::string> full;
  full.reserve(args.size() + 1);
  full.emplace_back("boolcl");
  full.insert(full.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(full.size());
  for (const std::string& s : full) argv.push_back(s.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace boolcl::cli
