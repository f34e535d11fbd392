#pragma once

#include <stdexcept>
#include <string>

namespace boolcl {

/// Rejected input: a precondition on user-supplied data failed.
struct invalid_input : std::invalid_argument {
  explicit invalid_input(const std::string& what) : std::invalid_argument(what) {}
};

/// Numeric degeneracy: the data passed validation but the computation cannot
/// produce a meaningful result (complex roots, vanishing transform, ...).
struct numeric_error : std::runtime_error {
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

/// Quadrature could not reach the requested tolerance within its budget.
/// Carries the partial value and the certified error estimate reached.
struct budget_error : numeric_error {
  double partial;
  double error_estimate;
  budget_error(const std::string& what, double value, double err)
      : numeric_error(what), partial(value), error_estimate(err) {}
};

}  // namespace boolcl
