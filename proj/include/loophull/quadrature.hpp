#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace loophull {

struct QuadratureConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_subdivisions = 4000;
  // Infinite upper limits are truncated at the smallest T (doubling from
  // a+1, capped here) whose tail bound drops below abs_tol/10.
  double truncation_cap = 800.0;
};

struct QuadratureError : std::runtime_error {
  double partial_estimate;
  QuadratureError(const std::string& msg, double partial)
      : std::runtime_error(msg), partial_estimate(partial) {}
};

// Globally adaptive Gauss-Kronrod 7-15 on [a, b]: the interval with the
// largest error estimate is bisected until the summed error estimate is
// below max(abs_tol, rel_tol*|value|). Throws QuadratureError (carrying the
// partial estimate) if max_subdivisions is exhausted first.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, const QuadratureConfig& cfg = {});

// Semi-infinite integral: truncates [a, inf) at T chosen from tail_bound
// (an upper bound for the integral over [T, inf)), then integrates [a, T].
double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             const std::function<double(double)>& tail_bound,
                             const QuadratureConfig& cfg = {});

}  // namespace loophull
