#include "loophull/loewner.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include <omp.h>

#include "loophull/analytic.hpp"
#include "loophull/rng.hpp"

namespace loophull {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr long long kMaxSteps = 500'000'000;
constexpr double kModulusFloor2 = 1e-18;  // |X| floor of 1e-9, squared

void validate(const LoewnerRun& run) {
  if (!(run.kappa > 0.0) || run.kappa > 4.0) {
    throw std::invalid_argument("kappa must lie in (0, 4]");
  }
  if (!(run.z0.y > 0.0)) {
    throw std::invalid_argument("z0 must lie in the open upper half plane");
  }
  if (!(run.theta_exit > 0.0) || run.theta_exit >= kPi / 4.0) {
    throw std::invalid_argument("theta_exit must lie in (0, pi/4)");
  }
  if (!(run.dt_base > 0.0) || run.dt_base >= 0.25) {
    throw std::invalid_argument("dt_base must lie in (0, 0.25)");
  }
}

}  // namespace

SideResult evolve_point_side(const LoewnerRun& run,
                             std::span<const double> snapshot_times,
                             std::span<double> snapshot_theta) {
  validate(run);
  const double t_max =
      run.t_max > 0.0 ? run.t_max
                      : 1e4 * (run.z0.x * run.z0.x + run.z0.y * run.z0.y);
  const double sqrt_kappa = std::sqrt(run.kappa);
  CounterRng rng(run.seed);

  std::complex<double> x(run.z0.x, run.z0.y);
  double t = 0.0;
  double theta = std::arg(x);
  std::size_t snap = 0;

  SideResult out;
  while (true) {
    if (x.imag() <= 0.0) {
      throw std::logic_error("Im X became nonpositive during a kappa<=4 run");
    }
    if (theta <= run.theta_exit) {
      out.side = Side::Right;
      break;
    }
    if (theta >= kPi - run.theta_exit) {
      out.side = Side::Left;
      break;
    }
    if (t >= t_max || out.steps >= kMaxSteps) {
      out.side = Side::Undecided;
      break;
    }
    const double mod2 = std::norm(x);
    if (mod2 < kModulusFloor2) {
      out.side = Side::Undecided;
      break;
    }
    const double delta = run.dt_base * std::min(1.0, mod2);
    const double db = rng.normal() * std::sqrt(delta);
    x += 2.0 * delta / x - std::complex<double>(sqrt_kappa * db, 0.0);
    t += delta;
    ++out.steps;
    theta = std::arg(x);
    while (snap < snapshot_times.size() && snapshot_times[snap] <= t) {
      snapshot_theta[snap++] = theta;
    }
  }
  // Stopped process: freeze theta for snapshot times past the exit.
  while (snap < snapshot_times.size()) snapshot_theta[snap++] = theta;

  out.t_stop = t;
  out.theta_final = theta;
  return out;
}

SideResult evolve_point_side(const LoewnerRun& run) {
  return evolve_point_side(run, {}, {});
}

SideProbabilityReport estimate_side_probability(PlanarPoint z0, double kappa,
                                                std::uint64_t samples,
                                                const LoewnerRun& params,
                                                int threads) {
  if (samples < 100) {
    throw std::invalid_argument("side-probability estimate needs M >= 100");
  }
  LoewnerRun proto = params;
  proto.z0 = z0;
  proto.kappa = kappa;
  validate(proto);

  const int nt = threads > 0 ? threads : omp_get_max_threads();
  std::uint64_t right = 0;
  std::uint64_t left = 0;
  std::uint64_t undecided = 0;
  const std::int64_t m = static_cast<std::int64_t>(samples);
#pragma omp parallel for num_threads(nt) schedule(dynamic, 64) \
    reduction(+ : right, left, undecided)
  for (std::int64_t k = 0; k < m; ++k) {
    LoewnerRun run = proto;
    run.seed = derive_seed(params.seed, static_cast<std::uint64_t>(k));
    const SideResult res = evolve_point_side(run);
    switch (res.side) {
      case Side::Right: ++right; break;
      case Side::Left: ++left; break;
      case Side::Undecided: ++undecided; break;
    }
  }

  SideProbabilityReport rep;
  rep.kappa = kappa;
  rep.theta0 = std::atan2(z0.y, z0.x);
  rep.samples = samples;
  rep.right = right;
  rep.left = left;
  rep.undecided = undecided;
  const std::uint64_t decided = right + left;
  rep.mean = decided > 0 ? static_cast<double>(right) / decided : 0.0;
  rep.std_error =
      decided > 0 ? std::sqrt(rep.mean * (1.0 - rep.mean) / decided) : 0.0;
  rep.analytic = schramm_right_prob({kappa, rep.theta0});
  rep.theta_exit = proto.theta_exit;
  rep.undecided_warning = undecided * 100 > samples;
  return rep;
}

}  // namespace loophull
