#include "loophull/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "loophull/numerics.hpp"

namespace loophull {

namespace {

constexpr double kPi = std::numbers::pi;

void validate_kappa_angle(const KappaAngle& p) {
  if (!(p.kappa > 0.0) || p.kappa > 4.0) {
    throw std::domain_error("kappa must lie in (0, 4]");
  }
  if (p.theta < 0.0 || p.theta > kPi) {
    throw std::domain_error("theta must lie in [0, pi]");
  }
}

}  // namespace

double schramm_right_prob_quadrature(const KappaAngle& p,
                                     const QuadratureConfig& cfg) {
  validate_kappa_angle(p);
  const double ex = 2.0 * (4.0 - p.kappa) / p.kappa;  // >= 0 for kappa <= 4
  auto f = [ex](double u) { return std::pow(std::sin(u), ex); };
  const double den = integrate_adaptive(f, 0.0, kPi, cfg);
  if (p.theta == 0.0) return 1.0;
  if (p.theta == kPi) return 0.0;
  const double num = integrate_adaptive(f, p.theta, kPi, cfg);
  return num / den;
}

double schramm_right_prob_closed(const KappaAngle& p) {
  validate_kappa_angle(p);
  const double ex = 2.0 * (4.0 - p.kappa) / p.kappa;
  const double a = 0.5 * (ex + 1.0);
  const double b = 0.5;
  // int_0^theta sin^ex over int_0^pi sin^ex via the regularized incomplete
  // beta; the split at pi/2 keeps the argument in [0, 1].
  double frac;
  if (p.theta <= 0.5 * kPi) {
    const double s = std::sin(p.theta);
    frac = 0.5 * regularized_incomplete_beta(a, b, s * s);
  } else {
    const double s = std::sin(kPi - p.theta);
    frac = 1.0 - 0.5 * regularized_incomplete_beta(a, b, s * s);
  }
  return 1.0 - frac;
}

double schramm_right_prob(const KappaAngle& p, const QuadratureConfig& cfg) {
  validate_kappa_angle(p);
  if (p.theta == 0.0) return 1.0;
  if (p.theta == kPi) return 0.0;
  if (std::abs(p.kappa - 8.0 / 3.0) < 1e-12) {
    const double closed = 0.5 + 0.5 * std::cos(p.theta);
    const double quad = schramm_right_prob_quadrature(p, cfg);
    if (std::abs(closed - quad) > 1e-10) {
      throw std::logic_error(
          "Schramm closed form and quadrature disagree beyond 1e-10");
    }
    return closed;
  }
  return schramm_right_prob_quadrature(p, cfg);
}

PsiResult yor_psi(double r, double x, const QuadratureConfig& cfg) {
  if (!(r > 0.0)) throw std::domain_error("yor_psi requires r > 0");
  if (x == 0.0) throw std::domain_error("yor_psi requires x != 0");
  const double r2 = r * r;
  if (std::exp(-r2) == 0.0) return {0.0, true};

  const double ax = std::abs(x);
  auto f = [r2, ax](double t) {
    return std::exp(-r2 * std::cosh(t)) / (t * t + ax * ax);
  };
  // exp(-r^2 cosh T) bounds the tail for T >= 1 (the 1/(t^2+x^2) factor
  // integrates to less than 1 there).
  auto tail = [r2](double T) {
    const double c = std::cosh(std::min(T, 700.0));
    const double e = r2 * c;
    return e > 745.0 ? 0.0 : std::exp(-e);
  };
  const double integral = integrate_to_infinity(f, 0.0, tail, cfg);
  const double v = (ax / kPi) * integral;
  return {x > 0.0 ? v : -v, false};
}

double index_probability(const IndexLawParams& p, const QuadratureConfig& cfg) {
  if (!(p.r > 0.0)) throw std::domain_error("index law requires r > 0");
  const double pref = std::exp(-p.r * p.r);
  if (p.n == 0) {
    if (pref == 0.0) return 1.0;
    const double lo = yor_psi(p.r, -kPi, cfg).value;
    const double hi = yor_psi(p.r, kPi, cfg).value;
    return std::clamp(1.0 + pref * (lo - hi), 0.0, 1.0);
  }
  if (pref == 0.0) return 0.0;
  const double lo = yor_psi(p.r, (2.0 * p.n - 1.0) * kPi, cfg).value;
  const double hi = yor_psi(p.r, (2.0 * p.n + 1.0) * kPi, cfg).value;
  return std::clamp(pref * (lo - hi), 0.0, 1.0);
}

double index_probability_tail(double r, int n_max, const QuadratureConfig& cfg) {
  if (n_max < 0) throw std::invalid_argument("n_max must be nonnegative");
  const double pref = std::exp(-r * r);
  if (pref == 0.0) return 0.0;
  // sum_{n > N} P(n) telescopes to exp(-r^2) Psi_r((2N+1) pi), twice for
  // both signs.
  return 2.0 * pref * yor_psi(r, (2.0 * n_max + 1.0) * kPi, cfg).value;
}

double expected_area_index(int n, const QuadratureConfig& cfg) {
  if (n == 0) {
    throw std::domain_error(
        "n = 0 has no 1D integral form; the zero-index area follows from the "
        "decomposition");
  }
  const double q1 = 2.0 * n - 1.0;
  const double q2 = 2.0 * n + 1.0;
  auto f = [q1, q2](double t) {
    const double t2 = t * t;
    return 1.0 / (1.0 + std::cosh(t)) *
           (q1 / (t2 + q1 * q1 * kPi * kPi) - q2 / (t2 + q2 * q2 * kPi * kPi));
  };
  auto tail = [](double T) { return 2.0 * std::exp(-T) / std::max(T, 1.0); };
  return kPi * integrate_to_infinity(f, 0.0, tail, cfg);
}

FIdentityResult f_identity_check(double x, long long terms,
                                 const QuadratureConfig& cfg) {
  if (!(x > 1.0)) throw std::domain_error("the F identity requires x > 1");
  FIdentityResult res;
  res.closed_form = 4.0 / (kPi * kPi * x * x);

  const double wm = x - 1.0;
  const double wp = x + 1.0;
  auto f = [wm, wp](double t) {
    const double t2 = t * t;
    return 1.0 / (1.0 + std::cosh(t)) *
           (wm / (t2 + wm * wm * kPi * kPi) - wp / (t2 + wp * wp * kPi * kPi));
  };
  auto tail = [](double T) { return 2.0 * std::exp(-T) / std::max(T, 1.0); };
  // Full-line integral; the integrand is even in t.
  res.integral_value = 2.0 * integrate_to_infinity(f, 0.0, tail, cfg);

  if (terms == 0) {
    res.series_value = std::numeric_limits<double>::quiet_NaN();
    return res;
  }
  if (x == std::floor(x)) {
    throw std::domain_error(
        "the residue series for F is restricted to non-integer x; use the "
        "integral route at integer x");
  }
  if (2.0 * static_cast<double>(terms) - 1.0 < 2.0 * wp) {
    throw std::invalid_argument("too few series terms for the tail bound");
  }
  CompensatedSum sum;
  for (long long k = 1; k <= terms; ++k) {
    const double q = 2.0 * static_cast<double>(k) - 1.0;
    const double dm = wm * wm - q * q;
    const double dp = wp * wp - q * q;
    sum.add(q * wm / (dm * dm) - q * wp / (dp * dp));
  }
  res.series_value = -(8.0 / (kPi * kPi)) * sum.value();
  // |term_k| <= 8.3/(2k-1)^3 once 2k-1 >= 2(x+1).
  const double q_last = 2.0 * static_cast<double>(terms) - 1.0;
  res.series_tail_bound = (8.0 / (kPi * kPi)) * 8.3 / (4.0 * q_last * q_last);
  return res;
}

double sle_conditioned_area_integral(const QuadratureConfig& cfg) {
  // -(4/5) Im(z + 1/z) Im(z) in polar coordinates, with the angular factor
  // int_0^pi sin^2 = pi/2 taken analytically.
  auto f = [](double r) { return -0.8 * (r - 1.0 / r) * r * r; };
  return 0.5 * kPi * integrate_adaptive(f, 0.0, 1.0, cfg);
}

double sle_conditioned_area_integral_2d(const QuadratureConfig& cfg,
                                        double theta_lo, double theta_hi) {
  if (theta_hi < 0.0) theta_hi = kPi;
  QuadratureConfig inner = cfg;
  inner.abs_tol = cfg.abs_tol * 0.1;
  inner.rel_tol = cfg.rel_tol * 0.1;
  auto outer = [&](double theta) {
    const double s = std::sin(theta);
    const double s2 = s * s;
    auto f = [s2](double r) { return -0.8 * (r - 1.0 / r) * s2 * r * r; };
    return integrate_adaptive(f, 0.0, 1.0, inner);
  };
  return integrate_adaptive(outer, theta_lo, theta_hi, cfg);
}

double area_decomposition_residual() {
  const double basel = kPi * kPi / 6.0;
  return (1.0 / kPi) * basel + kPi / 30.0 - kPi / 5.0;
}

}  // namespace loophull
