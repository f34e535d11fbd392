#pragma once

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "boolcl/errors.hpp"
#include "boolcl/experiments.hpp"
#include "boolcl/inversion.hpp"
#include "boolcl/measure.hpp"

namespace boolcl {

using json = nlohmann::ordered_json;

/// Shortest decimal form that round-trips a double.
inline std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  double back = 0.0;
  for (int prec = 1; prec <= 16; ++prec) {
    char probe[64];
    std::snprintf(probe, sizeof probe, "%.*g", prec, v);
    std::sscanf(probe, "%lf", &back);
    if (back == v) return probe;
  }
  return buf;
}

inline AtomicMeasure measure_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("atoms") || !j["atoms"].is_array())
    throw invalid_input("measure JSON must be an object with an \"atoms\" array");
  if (j["atoms"].empty()) throw invalid_input("measure needs at least one atom");
  std::vector<Atom> atoms;
  double prev = -std::numeric_limits<double>::infinity();
  for (const auto& entry : j["atoms"]) {
    if (!entry.is_object() || !entry.contains("t") || !entry.contains("w") ||
        !entry["t"].is_number() || !entry["w"].is_number())
      throw invalid_input("each atom must be an object with numeric \"t\" and \"w\"");
    const double t = entry["t"].get<double>();
    const double w = entry["w"].get<double>();
    if (!std::isfinite(t) || !std::isfinite(w))
      throw invalid_input("atom locations and weights must be finite");
    if (!(w > 0.0)) throw invalid_input("atom weights must be positive");
    if (!(t > prev)) throw invalid_input("atom locations must be strictly increasing");
    prev = t;
    atoms.push_back({t, w});
  }
  return AtomicMeasure(atoms);
}

inline AtomicMeasure parse_measure(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw invalid_input(std::string("measure JSON parse failure: ") + e.what());
  }
  return measure_from_json(j);
}

inline AtomicMeasure read_measure_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot open measure file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_measure(buf.str());
}

inline json measure_to_json(const AtomicMeasure& mu) {
  json atoms = json::array();
  for (std::size_t i = 0; i < mu.size(); ++i)
    atoms.push_back(json{{"t", mu.location(i)}, {"w", mu.weight(i)}});
  return json{{"atoms", atoms}};
}

inline void write_measure_file(const AtomicMeasure& mu, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw invalid_input("cannot open output file: " + path);
  out << measure_to_json(mu).dump(2) << '\n';
}

/// Fixed 17-significant-digit column formatting keeps the files diffable.
inline std::string format_csv_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_report_csv(const CltReport& report, std::ostream& out) {
  out << "n,d_lev,thm1_bound,sqrt_n_dlev\n";
  for (const CltRow& r : report.rows)
    out << r.n << ',' << format_csv_real(r.d_lev) << ',' << format_csv_real(r.bound) << ','
        << format_csv_real(r.sqrt_n_d) << '\n';
}

inline json report_summary(const CltReport& report) {
  json j{{"alpha", report.ledger.alpha},
         {"K", report.ledger.K},
         {"C", report.ledger.C},
         {"n_min", report.ledger.n_min}};
  if (report.fit) {
    j["slope"] = report.fit->slope;
    j["stderr"] = report.fit->stderr_;
  } else {
    j["slope"] = nullptr;
    j["stderr"] = nullptr;
  }
  return j;
}

namespace detail {
inline json endpoint_to_json(double v) {
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  return json(v);
}
}  // namespace detail

inline json bracket_to_json(const MassBracket& br) {
  return json{{"a", detail::endpoint_to_json(br.a)},
              {"b", detail::endpoint_to_json(br.b)},
              {"y", br.y},
              {"delta", br.delta},
              {"integral", br.smoothed_integral},
              {"margin", br.margin},
              {"inner_upper", br.inner_upper},
              {"outer_lower", br.outer_lower}};
}

/// Log-log chart of distance and bound against n, as a static SVG.
inline void write_rate_svg(const CltReport& report, std::ostream& out) {
  const double W = 640.0, H = 480.0, ml = 70.0, mr = 20.0, mt = 20.0, mb = 50.0;
  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
  double ylo = xlo, yhi = -xlo;
  for (const CltRow& r : report.rows) {
    const double lx = std::log10(static_cast<double>(r.n));
    xlo = std::min(xlo, lx);
    xhi = std::max(xhi, lx);
    for (const double v : {r.d_lev, r.bound}) {
      if (v > 0.0) {
        ylo = std::min(ylo, std::log10(v));
        yhi = std::max(yhi, std::log10(v));
      }
    }
  }
  if (!(xhi > xlo)) xhi = xlo + 1.0;
  if (!(yhi > ylo)) {
    ylo = -1.0;
    yhi = 1.0;
  }
  const auto px = [&](double lx) { return ml + (lx - xlo) / (xhi - xlo) * (W - ml - mr); };
  const auto py = [&](double lyv) { return H - mb - (lyv - ylo) / (yhi - ylo) * (H - mt - mb); };
  const auto polyline = [&](const char* color, bool bound) {
    std::string pts;
    for (const CltRow& r : report.rows) {
      const double v = bound ? r.bound : r.d_lev;
      if (!(v > 0.0)) continue;
      pts += format_real(px(std::log10(static_cast<double>(r.n)))) + "," +
             format_real(py(std::log10(v))) + " ";
    }
    if (pts.empty()) return std::string();
    return "  <polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"2\" points=\"" + pts + "\"/>\n";
  };
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
      << "  <rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr
      << "\" height=\"" << H - mt - mb << "\" fill=\"white\" stroke=\"black\"/>\n";
  for (int d = static_cast<int>(std::ceil(xlo)); d <= static_cast<int>(std::floor(xhi)); ++d) {
    out << "  <line x1=\"" << px(d) << "\" y1=\"" << H - mb << "\" x2=\"" << px(d) << "\" y2=\""
        << H - mb + 6 << "\" stroke=\"black\"/>\n"
        << "  <text x=\"" << px(d) << "\" y=\"" << H - mb + 22
        << "\" font-size=\"12\" text-anchor=\"middle\">1e" << d << "</text>\n";
  }
  for (int d = static_cast<int>(std::ceil(ylo)); d <= static_cast<int>(std::floor(yhi)); ++d) {
    out << "  <line x1=\"" << ml - 6 << "\" y1=\"" << py(d) << "\" x2=\"" << ml << "\" y2=\""
        << py(d) << "\" stroke=\"black\"/>\n"
        << "  <text x=\"" << ml - 10 << "\" y=\"" << py(d) + 4
        << "\" font-size=\"12\" text-anchor=\"end\">1e" << d << "</text>\n";
  }
  out << polyline("#1f77b4", false) << polyline("#d62728", true)
      << "  <text x=\"" << W / 2 << "\" y=\"" << H - 12
      << "\" font-size=\"13\" text-anchor=\"middle\">n (log scale)</text>\n"
      << "  <text x=\"" << ml + 12 << "\" y=\"" << mt + 18
      << "\" font-size=\"13\" fill=\"#1f77b4\">Levy distance</text>\n"
      << "  <text x=\"" << ml + 12 << "\" y=\"" << mt + 36
      << "\" font-size=\"13\" fill=\"#d62728\">proved bound</text>\n"
      << "</svg>\n";
}

}  // namespace boolcl
