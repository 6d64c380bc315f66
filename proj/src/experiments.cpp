#include "loophull/experiments.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <omp.h>

#include "loophull/analytic.hpp"
#include "loophull/hull.hpp"
#include "loophull/numerics.hpp"
#include "loophull/rng.hpp"

namespace loophull {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void validate(const ExperimentConfig& cfg) {
  if (cfg.samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (cfg.index_max < 1) throw std::invalid_argument("index_max must be >= 1");
  if (cfg.steps < 2) throw std::invalid_argument("steps must be >= 2");
  if (!(cfg.cells_per_unit > 0.0)) {
    throw std::invalid_argument("cells_per_unit must be positive");
  }
}

int thread_count(const ExperimentConfig& cfg) {
  return cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
}

LoopPath draw_loop(const ExperimentConfig& cfg, std::uint64_t seed) {
  const BridgeSpec spec{cfg.steps, seed, cfg.kind};
  LoopPath path = sample_path(spec);
  if (cfg.kind == PathKind::lattice_loop) {
    // Diffusive rescaling so the lattice loop approximates the time-1 loop.
    path = scaled(path, 1.0 / std::sqrt(static_cast<double>(cfg.steps)));
  }
  return path;
}

struct MeanStd {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n = 0;
};

MeanStd mean_std(const std::vector<double>& values) {
  MeanStd out;
  CompensatedSum s;
  for (const double v : values) {
    if (std::isnan(v)) continue;
    s.add(v);
    ++out.n;
  }
  if (out.n == 0) return out;
  out.mean = s.value() / static_cast<double>(out.n);
  if (out.n < 2) return out;
  CompensatedSum sq;
  for (const double v : values) {
    if (std::isnan(v)) continue;
    const double d = v - out.mean;
    sq.add(d * d);
  }
  const double var = sq.value() / static_cast<double>(out.n - 1);
  out.std_error = std::sqrt(var / static_cast<double>(out.n));
  return out;
}

EstimateReport make_report(const std::string& quantity,
                           const std::vector<double>& values,
                           std::optional<double> target) {
  const MeanStd ms = mean_std(values);
  return EstimateReport{quantity, ms.mean, ms.std_error, ms.n, target};
}

void check_failures(std::uint64_t failures, std::uint64_t samples) {
  if (failures * 1000 > samples) {
    throw std::runtime_error("more than 0.1% of samples failed with geometry errors");
  }
}

}  // namespace

AreaExperimentResult run_area_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const std::int64_t m = static_cast<std::int64_t>(cfg.samples);
  std::vector<double> hull(cfg.samples, kNaN);
  std::vector<double> blocked(cfg.samples, kNaN);
  std::atomic<std::uint64_t> failures{0};

#pragma omp parallel for num_threads(thread_count(cfg)) schedule(dynamic)
  for (std::int64_t k = 0; k < m; ++k) {
    try {
      const LoopPath path = draw_loop(cfg, derive_seed(cfg.master_seed, k));
      const GridSpec grid =
          make_grid_for_path(path, cfg.cells_per_unit, cfg.margin);
      const RegionAreas ra = serial::hull_area(path, grid);
      hull[static_cast<std::size_t>(k)] = ra.hull_area;
      blocked[static_cast<std::size_t>(k)] = ra.blocked_area;
    } catch (const GeometryError&) {
      failures.fetch_add(1, std::memory_order_relaxed);
    }
  }
  check_failures(failures.load(), cfg.samples);

  AreaExperimentResult res;
  res.hull = make_report("hull_area", hull, kPi / 5.0);
  res.blocked = make_report("blocked_area", blocked, std::nullopt);
  res.failures = failures.load();
  if (cfg.keep_per_sample) res.per_sample_hull = std::move(hull);
  return res;
}

WindingExperimentResult run_winding_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.index_max > 5) {
    throw std::invalid_argument(
        "index_max above 5 estimates regions dominated by grid bias");
  }
  const std::int64_t m = static_cast<std::int64_t>(cfg.samples);
  const int kmax = cfg.index_max;

  std::vector<double> hull(cfg.samples, kNaN);
  std::vector<double> blocked(cfg.samples, kNaN);
  std::vector<double> zero(cfg.samples, kNaN);
  std::vector<double> tail(cfg.samples, kNaN);
  std::vector<std::vector<double>> per(2 * kmax + 1,
                                       std::vector<double>(cfg.samples, kNaN));
  std::atomic<std::uint64_t> failures{0};
  std::atomic<std::int64_t> max_residual{0};

#pragma omp parallel for num_threads(thread_count(cfg)) schedule(dynamic)
  for (std::int64_t k = 0; k < m; ++k) {
    try {
      const LoopPath path = draw_loop(cfg, derive_seed(cfg.master_seed, k));
      const GridSpec grid =
          make_grid_for_path(path, cfg.cells_per_unit, cfg.margin);
      const PathRasterAnalysis an = serial::analyze_path(path, grid);
      const RegionAreas& ra = an.areas;

      const std::size_t kk = static_cast<std::size_t>(k);
      hull[kk] = ra.hull_area;
      blocked[kk] = ra.blocked_area;
      zero[kk] = ra.zero_inside;
      double named = 0.0;
      for (int n = -kmax; n <= kmax; ++n) {
        if (n == 0) continue;
        const auto it = ra.per_index.find(n);
        const double a = it == ra.per_index.end() ? 0.0 : it->second;
        per[static_cast<std::size_t>(n + kmax)][kk] = a;
        named += a;
      }
      tail[kk] = ra.hull_area - ra.blocked_area - ra.zero_inside - named;

      const std::int64_t residual = std::abs(ra.partition_residual_cells());
      std::int64_t seen = max_residual.load(std::memory_order_relaxed);
      while (residual > seen &&
             !max_residual.compare_exchange_weak(seen, residual)) {
      }
    } catch (const GeometryError&) {
      failures.fetch_add(1, std::memory_order_relaxed);
    }
  }
  check_failures(failures.load(), cfg.samples);

  WindingExperimentResult res;
  res.hull = make_report("hull_area", hull, kPi / 5.0);
  res.blocked = make_report("blocked_area", blocked, std::nullopt);
  res.zero_inside = make_report("winding_area_0_inside", zero, kPi / 30.0);
  for (int n = -kmax; n <= kmax; ++n) {
    if (n == 0) continue;
    res.per_index[n] = make_report(
        "winding_area_" + std::to_string(n), per[static_cast<std::size_t>(n + kmax)],
        1.0 / (2.0 * kPi * static_cast<double>(n) * n));
  }
  // Expected area beyond |n| = kmax: (1/pi) (pi^2/6 - sum_{1..kmax} 1/n^2).
  double partial = 0.0;
  for (int n = 1; n <= kmax; ++n) partial += 1.0 / (static_cast<double>(n) * n);
  res.index_tail = make_report("winding_area_tail", tail,
                               (kPi * kPi / 6.0 - partial) / kPi);
  for (int n = 1; n <= kmax; ++n) {
    std::vector<double> diff(cfg.samples, kNaN);
    const auto& pos = per[static_cast<std::size_t>(n + kmax)];
    const auto& neg = per[static_cast<std::size_t>(-n + kmax)];
    for (std::size_t i = 0; i < diff.size(); ++i) {
      if (!std::isnan(pos[i]) && !std::isnan(neg[i])) diff[i] = pos[i] - neg[i];
    }
    res.pair_diff[n] =
        make_report("winding_area_pair_diff_" + std::to_string(n), diff, 0.0);
  }
  res.max_partition_residual_cells = max_residual.load();
  res.failures = failures.load();
  return res;
}

IndexPointwiseResult run_index_pointwise(const ExperimentConfig& cfg,
                                         PlanarPoint z, int compare_max) {
  validate(cfg);
  if (z.x == 0.0 && z.y == 0.0) {
    throw std::invalid_argument("z must differ from the loop start");
  }
  const std::int64_t m = static_cast<std::int64_t>(cfg.samples);
  constexpr int kNoValue = std::numeric_limits<int>::min();
  std::vector<int> winding(cfg.samples, kNoValue);
  std::atomic<std::uint64_t> resampled{0};

#pragma omp parallel for num_threads(thread_count(cfg)) schedule(dynamic)
  for (std::int64_t k = 0; k < m; ++k) {
    for (std::uint64_t retry = 0; retry < 8; ++retry) {
      const LoopPath path =
          draw_loop(cfg, derive_seed(cfg.master_seed, k, retry));
      const PointWinding wz = winding_number_angle(path, z);
      if (!wz.on_path) {
        winding[static_cast<std::size_t>(k)] = wz.winding;
        if (retry > 0) resampled.fetch_add(1, std::memory_order_relaxed);
        break;
      }
    }
  }

  IndexPointwiseResult res;
  res.z = z;
  res.compare_max = compare_max;
  res.resampled = resampled.load();
  std::uint64_t used = 0;
  for (const int w : winding) {
    if (w == kNoValue) continue;
    ++res.counts[w];
    ++used;
  }
  res.samples = used;

  const double r = std::hypot(z.x, z.y);
  const QuadratureConfig qcfg;
  double expected_rest = 1.0;
  double chi = 0.0;
  for (int n = -compare_max; n <= compare_max; ++n) {
    const auto it = res.counts.find(n);
    const double count = it == res.counts.end() ? 0.0 : it->second;
    const double emp = count / static_cast<double>(used);
    const double p = index_probability({r, n}, qcfg);
    res.empirical[n] = emp;
    res.analytic[n] = p;
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(used));
    res.z_score[n] = se > 0.0 ? (emp - p) / se : 0.0;
    expected_rest -= p;
    const double e = p * static_cast<double>(used);
    if (e > 0.0) chi += (count - e) * (count - e) / e;
  }
  double rest_count = 0.0;
  for (const auto& [n, c] : res.counts) {
    if (std::abs(n) > compare_max) rest_count += static_cast<double>(c);
  }
  const double e_rest = std::max(expected_rest, 0.0) * static_cast<double>(used);
  if (e_rest > 0.0) chi += (rest_count - e_rest) * (rest_count - e_rest) / e_rest;
  res.chi_square = chi;
  res.chi_square_df = 2 * compare_max + 1;
  return res;
}

VervaatCheckResult run_vervaat_check(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.kind != PathKind::gaussian_bridge) {
    throw std::invalid_argument("vervaat check runs on gaussian bridges");
  }
  const std::int64_t m = static_cast<std::int64_t>(cfg.samples);
  std::uint64_t equal_exact = 0;
  std::uint64_t y_nonneg = 0;
  std::uint64_t min_zero = 0;

#pragma omp parallel for num_threads(thread_count(cfg)) schedule(dynamic) \
    reduction(+ : equal_exact, y_nonneg, min_zero)
  for (std::int64_t k = 0; k < m; ++k) {
    const LoopPath path = sample_gaussian_bridge(
        {cfg.steps, derive_seed(cfg.master_seed, k), PathKind::gaussian_bridge});
    const std::size_t base = lowest_vertex_index(path);
    const PlanarPoint c = path.points[base];
    // Re-basing the input at its lowest vertex makes both paths share one
    // point set, so grids derived from their bounding boxes coincide and
    // area equality must hold bit-for-bit.
    const LoopPath rebased = translated(path, {-c.x, -c.y});
    const LoopPath shifted = vervaat_transform(path);

    const GridSpec g1 = make_grid_for_path(rebased, cfg.cells_per_unit, cfg.margin);
    const GridSpec g2 = make_grid_for_path(shifted, cfg.cells_per_unit, cfg.margin);
    const RegionAreas a1 = serial::hull_area(rebased, g1);
    const RegionAreas a2 = serial::hull_area(shifted, g2);
    if (a1.hull_cells == a2.hull_cells && a1.hull_area == a2.hull_area &&
        a1.blocked_cells == a2.blocked_cells) {
      ++equal_exact;
    }

    double min_y = shifted.points[0].y;
    bool nonneg = true;
    for (const PlanarPoint& p : shifted.points) {
      min_y = std::min(min_y, p.y);
      nonneg = nonneg && p.y >= 0.0;
    }
    if (nonneg) ++y_nonneg;
    if (min_y == 0.0) ++min_zero;
  }

  VervaatCheckResult res;
  res.samples = cfg.samples;
  res.area_equal_exact = equal_exact;
  res.y_nonnegative = y_nonneg;
  res.min_y_zero_exact = min_zero;
  res.all_pass = equal_exact == cfg.samples && y_nonneg == cfg.samples &&
                 min_zero == cfg.samples;
  return res;
}

ConvergenceReport convergence_study(
    const ExperimentConfig& base,
    std::span<const std::pair<int, double>> ladder) {
  if (ladder.size() < 3) {
    throw std::invalid_argument("convergence ladder needs at least 3 rungs");
  }
  ConvergenceReport rep;
  for (const auto& [steps, cpu] : ladder) {
    ExperimentConfig cfg = base;
    cfg.steps = steps;
    cfg.cells_per_unit = cpu;
    const AreaExperimentResult r = run_area_experiment(cfg);
    rep.rows.push_back({steps, cpu, r.hull.mean, r.hull.std_error,
                        r.blocked.mean, r.hull.samples});
  }
  rep.hull_monotone_in_steps = true;
  rep.blocked_decreasing_in_h = true;
  for (std::size_t i = 0; i + 1 < rep.rows.size(); ++i) {
    const ConvergenceRow& a = rep.rows[i];
    const ConvergenceRow& b = rep.rows[i + 1];
    if (b.steps > a.steps && a.cells_per_unit == b.cells_per_unit) {
      // Allow two standard errors of slack; no rate is asserted.
      if (b.hull_mean < a.hull_mean - 2.0 * (a.hull_std_error + b.hull_std_error)) {
        rep.hull_monotone_in_steps = false;
      }
    }
    if (b.cells_per_unit > a.cells_per_unit && a.steps == b.steps) {
      if (b.blocked_mean >= a.blocked_mean) rep.blocked_decreasing_in_h = false;
    }
  }
  rep.note =
      "empirical refinement trends; no convergence rate is asserted";
  return rep;
}

}  // namespace loophull
