#include "loophull/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "loophull/numerics.hpp"

namespace loophull {

namespace {

// Gauss-Kronrod 7-15 abscissae and weights (QUADPACK dqk15 constants).
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr double kWgk[8] = {
    0.02293532201052922, 0.06309209262997855, 0.1047900103222502,
    0.1406532597155259,  0.1690047266392679,  0.1903505780647854,
    0.2044329400752989,  0.2094821410847278};
constexpr double kWg[4] = {0.1294849661688697, 0.2797053914892767,
                           0.3818300505051189, 0.4179591836734694};

struct Interval {
  double a;
  double b;
  double value;
  double error;
};

Interval gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  for (int idx = 0; idx < 7; ++idx) {
    const double dx = half * kXgk[idx];
    const double fsum = f(center - dx) + f(center + dx);
    resk += kWgk[idx] * fsum;
    if (idx % 2 == 1) resg += kWg[idx / 2] * fsum;
  }
  const double value = resk * half;
  const double diff = std::abs((resk - resg) * half);
  // The Kronrod value is far more accurate than |K - G| suggests; use the
  // QUADPACK-style sharpening, capped by the raw difference.
  const double err = std::min(diff, std::pow(200.0 * diff, 1.5));
  return {a, b, value, err};
}

void validate(const QuadratureConfig& cfg) {
  if (!(cfg.abs_tol > 0.0) || !(cfg.rel_tol > 0.0)) {
    throw std::invalid_argument("quadrature tolerances must be positive");
  }
  if (cfg.max_subdivisions < 1) {
    throw std::invalid_argument("max_subdivisions must be at least 1");
  }
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, const QuadratureConfig& cfg) {
  validate(cfg);
  if (a == b) return 0.0;
  if (b < a) return -integrate_adaptive(f, b, a, cfg);

  const auto worse = [](const Interval& u, const Interval& v) {
    return u.error < v.error;
  };
  std::vector<Interval> heap;
  heap.push_back(gk15(f, a, b));
  double total_value = heap.front().value;
  double total_error = heap.front().error;

  int subdivisions = 0;
  auto tolerance = [&]() {
    return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total_value));
  };
  while (total_error > tolerance()) {
    if (++subdivisions > cfg.max_subdivisions) {
      throw QuadratureError("quadrature did not converge after " +
                                std::to_string(cfg.max_subdivisions) +
                                " subdivisions",
                            total_value);
    }
    std::pop_heap(heap.begin(), heap.end(), worse);
    const Interval worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    const Interval lo = gk15(f, worst.a, mid);
    const Interval hi = gk15(f, mid, worst.b);
    total_value += lo.value + hi.value - worst.value;
    total_error += lo.error + hi.error - worst.error;
    heap.push_back(lo);
    std::push_heap(heap.begin(), heap.end(), worse);
    heap.push_back(hi);
    std::push_heap(heap.begin(), heap.end(), worse);
    if (std::isnan(total_value) || std::isnan(total_error)) {
      throw QuadratureError("integrand produced NaN", total_value);
    }
  }

  CompensatedSum sum;
  for (const Interval& seg : heap) sum.add(seg.value);
  return sum.value();
}

double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             const std::function<double(double)>& tail_bound,
                             const QuadratureConfig& cfg) {
  validate(cfg);
  const double cutoff = cfg.abs_tol / 10.0;
  double T = a + 1.0;
  while (tail_bound(T) >= cutoff) {
    const double next = a + 2.0 * (T - a);
    if (next - a > cfg.truncation_cap) {
      if (tail_bound(a + cfg.truncation_cap) >= cutoff) {
        throw QuadratureError(
            "tail bound does not drop below abs_tol/10 before the cap", 0.0);
      }
      T = a + cfg.truncation_cap;
      break;
    }
    T = next;
  }
  return integrate_adaptive(f, a, T, cfg);
}

}  // namespace loophull
