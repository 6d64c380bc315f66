#pragma once

#include "loophull/quadrature.hpp"

namespace loophull {

struct KappaAngle {
  double kappa = 8.0 / 3.0;  // in (0, 4]
  double theta = 0.0;        // in [0, pi]
};

struct IndexLawParams {
  double r = 1.0;  // distance from the loop start, > 0
  int n = 0;       // winding index
};

// Probability that the point at angle theta is to the right of the chordal
// SLE_kappa trace:
//   f(theta) = int_theta^pi sin(u)^p du / int_0^pi sin(u)^p du,
//   p = 2(4-kappa)/kappa.
// For kappa = 8/3 the closed form (1 + cos theta)/2 is returned after being
// checked against the quadrature route to 1e-10.
double schramm_right_prob(const KappaAngle& p, const QuadratureConfig& cfg = {});

// The two routes individually (quadrature of the defining integral, and the
// incomplete-beta closed form).
double schramm_right_prob_quadrature(const KappaAngle& p,
                                     const QuadratureConfig& cfg = {});
double schramm_right_prob_closed(const KappaAngle& p);

struct PsiResult {
  double value = 0.0;
  bool underflow = false;  // set when exp(-r^2) underflows; value is then 0
};

// Psi_r(x) = (x/pi) int_0^inf exp(-r^2 cosh t) / (t^2 + x^2) dt, odd in x
// (evaluated at |x|, sign applied). The upper limit is truncated at T with
// r^2 cosh T > 760, past the double-precision underflow threshold.
PsiResult yor_psi(double r, double x, const QuadratureConfig& cfg = {});

// Index law of the loop around a point at distance r:
//   P(n_z = n) = exp(-r^2) [Psi_r((2n-1)pi) - Psi_r((2n+1)pi)],  n != 0
//   P(n_z = 0) = 1 + exp(-r^2) [Psi_r(-pi) - Psi_r(pi)].
double index_probability(const IndexLawParams& p, const QuadratureConfig& cfg = {});

// Upper bound for sum_{|n| > n_max} P(n_z = n); the partial sums telescope,
// so sum_{|n|<=N} P + tail(N) == 1 up to quadrature error.
double index_probability_tail(double r, int n_max, const QuadratureConfig& cfg = {});

// Expected area of the winding-index-n region, n != 0, as the 1D integral
//   pi int_0^inf dt/(1+cosh t) [ (2n-1)/(t^2+(2n-1)^2 pi^2)
//                               - (2n+1)/(t^2+(2n+1)^2 pi^2) ]
// which evaluates to 1/(2 pi n^2).
double expected_area_index(int n, const QuadratureConfig& cfg = {});

struct FIdentityResult {
  double integral_value = 0.0;
  double series_value = 0.0;      // NaN when terms == 0
  double series_tail_bound = 0.0;
  double closed_form = 0.0;       // 4 / (pi^2 x^2)
};

// Checks F(x) = 4/(pi^2 x^2) by two independent routes: the full-line
// integral of dt/(1+cosh t) [ (x-1)/(t^2+(x-1)^2 pi^2) - (x+1)/(...) ] and
// the residue series
//   F(x) = -(8/pi^2) sum_{k>=1} [ (2k-1)(x-1)/((x-1)^2-(2k-1)^2)^2
//                                - (2k-1)(x+1)/((x+1)^2-(2k-1)^2)^2 ],
// summed with compensated accumulation. The series requires x > 1 and
// non-integer x; requesting it at integer x is a domain error. Pass
// terms == 0 to skip the series (series_value = NaN).
FIdentityResult f_identity_check(double x, long long terms,
                                 const QuadratureConfig& cfg = {});

// int over the upper half-disk of -(4/5) Im(z + 1/z) Im(z) dA(z) = pi/10.
// Radial route: the angular factor integrates to pi/2 analytically and only
// the radial integral is quadrature.
double sle_conditioned_area_integral(const QuadratureConfig& cfg = {});

// Full 2D tensor-quadrature cross-check of the same integral, restricted to
// theta in (theta_lo, theta_hi).
double sle_conditioned_area_integral_2d(const QuadratureConfig& cfg = {},
                                        double theta_lo = 0.0,
                                        double theta_hi = -1.0);

// Residual of the area decomposition (1/pi) sum 1/n^2 + pi/30 - pi/5, with
// the closed form pi^2/6 for the sum. Exactly zero in real arithmetic.
double area_decomposition_residual();

}  // namespace loophull
