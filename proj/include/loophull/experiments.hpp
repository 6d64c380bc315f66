#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "loophull/bridge.hpp"
#include "loophull/geometry.hpp"
#include "loophull/grid.hpp"

namespace loophull {

struct ExperimentConfig {
  std::uint64_t samples = 1000;
  int steps = 1 << 16;
  double cells_per_unit = 256.0;
  double margin = 0.05;  // extra grid border in plane units (>= 2h enforced)
  int index_max = 3;
  std::uint64_t master_seed = 0;
  PathKind kind = PathKind::gaussian_bridge;
  int threads = 0;  // 0 = OpenMP default
  bool keep_per_sample = false;
};

struct EstimateReport {
  std::string quantity;
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(M)
  std::uint64_t samples = 0;
  std::optional<double> target;
};

struct AreaExperimentResult {
  EstimateReport hull;
  EstimateReport blocked;
  std::uint64_t failures = 0;
  std::vector<double> per_sample_hull;  // filled when keep_per_sample
};

// Per sample: draw a loop (lattice loops rescaled by 1/sqrt(N)), build the
// grid from its bounding box, compute the hull area. Geometry errors abort
// the sample and are counted; more than 0.1% failures fails the run.
AreaExperimentResult run_area_experiment(const ExperimentConfig& cfg);

struct WindingExperimentResult {
  EstimateReport hull;
  EstimateReport blocked;
  EstimateReport zero_inside;                // target pi/30
  std::map<int, EstimateReport> per_index;   // |n| <= index_max
  EstimateReport index_tail;                 // area at |n| > index_max
  std::map<int, EstimateReport> pair_diff;   // W_n - W_{-n}, n = 1..index_max
  std::int64_t max_partition_residual_cells = 0;
  std::uint64_t failures = 0;
};

WindingExperimentResult run_winding_experiment(const ExperimentConfig& cfg);

struct IndexPointwiseResult {
  PlanarPoint z;
  std::uint64_t samples = 0;
  std::uint64_t resampled = 0;  // loops that hit z exactly and were redrawn
  std::map<int, std::uint64_t> counts;        // all observed indices
  std::map<int, double> empirical;            // |n| <= compare_max
  std::map<int, double> analytic;             // Yor's law values
  std::map<int, double> z_score;              // per-index binomial z
  double chi_square = 0.0;                    // cells |n|<=compare_max + rest
  int chi_square_df = 0;
  int compare_max = 3;
};

// Winding of each sampled loop around z by continuous-angle accumulation,
// compared pointwise with the index law.
IndexPointwiseResult run_index_pointwise(const ExperimentConfig& cfg,
                                         PlanarPoint z, int compare_max = 3);

struct VervaatCheckResult {
  std::uint64_t samples = 0;
  std::uint64_t area_equal_exact = 0;   // hull areas bit-identical
  std::uint64_t y_nonnegative = 0;      // transformed path has y >= 0
  std::uint64_t min_y_zero_exact = 0;   // min y of output is exactly 0
  bool all_pass = false;
};

// Hull area of the bridge (re-based at its lowest vertex) and of its Vervaat
// transform on grids derived from their common bounding box; the two rasters
// must agree bit-for-bit.
VervaatCheckResult run_vervaat_check(const ExperimentConfig& cfg);

struct ConvergenceRow {
  int steps = 0;
  double cells_per_unit = 0.0;
  double hull_mean = 0.0;
  double hull_std_error = 0.0;
  double blocked_mean = 0.0;
  std::uint64_t samples = 0;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  bool hull_monotone_in_steps = false;
  bool blocked_decreasing_in_h = false;
  std::string note;
};

// Ladder of (steps, cells_per_unit) refinements; rows are reported in the
// given order and summarized for monotone trends. No rate is asserted.
ConvergenceReport convergence_study(
    const ExperimentConfig& base,
    std::span<const std::pair<int, double>> ladder);

}  // namespace loophull
