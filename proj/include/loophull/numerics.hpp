#pragma once

#include <cmath>
#include <cstddef>

namespace loophull {

// Neumaier compensated accumulator.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Regularized incomplete beta function I_x(a, b), continued-fraction
// evaluation (modified Lentz), accurate to ~1e-14 for moderate a, b.
double regularized_incomplete_beta(double a, double b, double x);

// log of the beta function B(a, b).
double log_beta(double a, double b);

// log C(n, k) via lgamma.
double log_choose(long long n, long long k);

}  // namespace loophull
