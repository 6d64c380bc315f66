#pragma once

#include <cstdint>
#include <span>

#include "loophull/geometry.hpp"

namespace loophull {

// One marked-point run of the chordal Loewner dynamics
//   dX_t = (2 / X_t) dt - sqrt(kappa) dB_t,   X_0 = z0 in the upper half
// plane, with adaptive step delta = dt_base * min(1, |X_t|^2). The run stops
// when the argument of X_t leaves [theta_exit, pi - theta_exit] or t reaches
// t_max (t_max <= 0 selects the default 1e4 * |z0|^2).
struct LoewnerRun {
  double kappa = 8.0 / 3.0;
  PlanarPoint z0{0.0, 1.0};
  double dt_base = 5e-4;
  double t_max = 0.0;
  double theta_exit = 0.01;  // in (0, pi/4)
  std::uint64_t seed = 0;
};

enum class Side { Right, Left, Undecided };

struct SideResult {
  Side side = Side::Undecided;
  double t_stop = 0.0;
  double theta_final = 0.0;
  long long steps = 0;
};

SideResult evolve_point_side(const LoewnerRun& run);

// Variant recording theta at the given increasing snapshot times; after the
// run stops, theta is frozen at its exit value (the stopped process).
SideResult evolve_point_side(const LoewnerRun& run,
                             std::span<const double> snapshot_times,
                             std::span<double> snapshot_theta);

struct SideProbabilityReport {
  double kappa = 0.0;
  double theta0 = 0.0;
  double mean = 0.0;       // #Right / (#Right + #Left)
  double std_error = 0.0;  // binomial
  std::uint64_t samples = 0;
  std::uint64_t right = 0;
  std::uint64_t left = 0;
  std::uint64_t undecided = 0;
  double analytic = 0.0;   // schramm_right_prob at the same angle
  double theta_exit = 0.0;
  bool undecided_warning = false;  // undecided fraction above 1%
};

// samples >= 100 independent runs from counter-based per-sample seeds;
// undecided runs are excluded from the mean and reported.
SideProbabilityReport estimate_side_probability(PlanarPoint z0, double kappa,
                                                std::uint64_t samples,
                                                const LoewnerRun& params,
                                                int threads = 0);

}  // namespace loophull
