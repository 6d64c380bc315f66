#include "loophull/report.hpp"

#include <cstdio>

namespace loophull {

namespace {

constexpr const char* kVersion = "0.1.0";

std::string hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (const unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

nlohmann::json report_body(const EstimateReport& r) {
  nlohmann::json j{
      {"quantity", r.quantity},
      {"mean", r.mean},
      {"stderr", r.std_error},
      {"samples", r.samples},
  };
  if (r.target) j["target"] = *r.target;
  return j;
}

void attach_provenance(nlohmann::json& j, const ExperimentConfig& cfg) {
  const nlohmann::json c = config_to_json(cfg);
  j["config"] = c;
  j["config_hash"] = config_hash_hex(c);
  j["provenance"] = provenance_string(c);
}

}  // namespace

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  return nlohmann::json{
      {"samples", cfg.samples},
      {"steps", cfg.steps},
      {"cells_per_unit", cfg.cells_per_unit},
      {"margin", cfg.margin},
      {"index_max", cfg.index_max},
      {"master_seed", cfg.master_seed},
      {"kind", to_string(cfg.kind)},
  };
}

std::string config_hash_hex(const nlohmann::json& cfg) {
  return hex16(fnv1a64(cfg.dump()));
}

std::string provenance_string(const nlohmann::json& cfg) {
  std::string seed = cfg.contains("master_seed")
                         ? cfg.at("master_seed").dump()
                         : std::string("0");
  return std::string("loophull ") + kVersion + " cfg=" + config_hash_hex(cfg) +
         " seed=" + seed;
}

nlohmann::json report_to_json(const EstimateReport& r,
                              const ExperimentConfig& cfg) {
  nlohmann::json j = report_body(r);
  attach_provenance(j, cfg);
  return j;
}

nlohmann::json report_to_json(const AreaExperimentResult& r,
                              const ExperimentConfig& cfg) {
  nlohmann::json j{
      {"hull", report_body(r.hull)},
      {"blocked", report_body(r.blocked)},
      {"failures", r.failures},
  };
  if (!r.per_sample_hull.empty()) j["per_sample_hull"] = r.per_sample_hull;
  attach_provenance(j, cfg);
  return j;
}

nlohmann::json report_to_json(const WindingExperimentResult& r,
                              const ExperimentConfig& cfg) {
  nlohmann::json per = nlohmann::json::object();
  for (const auto& [n, rep] : r.per_index) {
    per[std::to_string(n)] = report_body(rep);
  }
  nlohmann::json diff = nlohmann::json::object();
  for (const auto& [n, rep] : r.pair_diff) {
    diff[std::to_string(n)] = report_body(rep);
  }
  nlohmann::json j{
      {"hull", report_body(r.hull)},
      {"blocked", report_body(r.blocked)},
      {"zero_inside", report_body(r.zero_inside)},
      {"per_index", per},
      {"index_tail", report_body(r.index_tail)},
      {"pair_diff", diff},
      {"max_partition_residual_cells", r.max_partition_residual_cells},
      {"failures", r.failures},
  };
  attach_provenance(j, cfg);
  return j;
}

nlohmann::json report_to_json(const IndexPointwiseResult& r,
                              const ExperimentConfig& cfg) {
  nlohmann::json emp = nlohmann::json::object();
  nlohmann::json ana = nlohmann::json::object();
  nlohmann::json zsc = nlohmann::json::object();
  for (const auto& [n, v] : r.empirical) emp[std::to_string(n)] = v;
  for (const auto& [n, v] : r.analytic) ana[std::to_string(n)] = v;
  for (const auto& [n, v] : r.z_score) zsc[std::to_string(n)] = v;
  nlohmann::json j{
      {"z", {r.z.x, r.z.y}},
      {"samples", r.samples},
      {"resampled", r.resampled},
      {"empirical", emp},
      {"analytic", ana},
      {"z_score", zsc},
      {"chi_square", r.chi_square},
      {"chi_square_df", r.chi_square_df},
      {"compare_max", r.compare_max},
  };
  attach_provenance(j, cfg);
  return j;
}

nlohmann::json report_to_json(const VervaatCheckResult& r,
                              const ExperimentConfig& cfg) {
  nlohmann::json j{
      {"samples", r.samples},
      {"area_equal_exact", r.area_equal_exact},
      {"y_nonnegative", r.y_nonnegative},
      {"min_y_zero_exact", r.min_y_zero_exact},
      {"all_pass", r.all_pass},
  };
  attach_provenance(j, cfg);
  return j;
}

nlohmann::json report_to_json(const ConvergenceReport& r,
                              const ExperimentConfig& cfg) {
  nlohmann::json rows = nlohmann::json::array();
  for (const ConvergenceRow& row : r.rows) {
    rows.push_back({{"steps", row.steps},
                    {"cells_per_unit", row.cells_per_unit},
                    {"hull_mean", row.hull_mean},
                    {"hull_stderr", row.hull_std_error},
                    {"blocked_mean", row.blocked_mean},
                    {"samples", row.samples}});
  }
  nlohmann::json j{
      {"rows", rows},
      {"hull_monotone_in_steps", r.hull_monotone_in_steps},
      {"blocked_decreasing_in_h", r.blocked_decreasing_in_h},
      {"note", r.note},
  };
  attach_provenance(j, cfg);
  return j;
}

nlohmann::json report_to_json(const SideProbabilityReport& r) {
  return nlohmann::json{
      {"kappa", r.kappa},
      {"theta", r.theta0},
      {"mean", r.mean},
      {"stderr", r.std_error},
      {"samples", r.samples},
      {"right", r.right},
      {"left", r.left},
      {"undecided", r.undecided},
      {"target", r.analytic},
      {"theta_exit", r.theta_exit},
      {"undecided_warning", r.undecided_warning},
  };
}

}  // namespace loophull
