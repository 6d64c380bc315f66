#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "loophull/quadrature.hpp"

namespace loophull::accept {

struct CheckRow {
  std::string name;
  double computed = 0.0;
  double target = 0.0;
  double abs_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// The deterministic analytic checks (disk integral, winding-area law,
// decomposition identity, index-law normalization, F identity, Schramm
// closed form vs quadrature) with their pinned tolerances.
std::vector<CheckRow> analytic_check_table(const QuadratureConfig& cfg = {});

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

CriterionResult criterion_analytic_disk();
CriterionResult criterion_winding_area_law();
CriterionResult criterion_decomposition();
CriterionResult criterion_index_normalization();
CriterionResult criterion_f_identity();
CriterionResult criterion_schramm_routes();
CriterionResult criterion_sle_monte_carlo(std::uint64_t seed, int threads,
                                          std::uint64_t samples = 20000);

struct McCriteria {
  CriterionResult area;
  CriterionResult winding;
};
McCriteria criterion_hull_and_winding_mc(std::uint64_t seed, int threads,
                                         std::uint64_t samples = 1000);

CriterionResult criterion_index_pointwise(std::uint64_t seed, int threads,
                                          std::uint64_t samples = 100000);
CriterionResult criterion_property_suites(std::uint64_t seed, int threads);

std::vector<CriterionResult> run_all(std::uint64_t seed, int threads);

}  // namespace loophull::accept
