#pragma once

#include <string>

#include <json.hpp>

#include "loophull/experiments.hpp"
#include "loophull/loewner.hpp"

namespace loophull {

nlohmann::json config_to_json(const ExperimentConfig& cfg);

// FNV-1a 64 over the canonical (sorted-key) config dump, as 16 hex digits.
std::string config_hash_hex(const nlohmann::json& cfg);

// Short provenance line carried by every report:
// "loophull <version> cfg=<hash> seed=<master_seed>".
std::string provenance_string(const nlohmann::json& cfg);

nlohmann::json report_to_json(const EstimateReport& r, const ExperimentConfig& cfg);
nlohmann::json report_to_json(const AreaExperimentResult& r, const ExperimentConfig& cfg);
nlohmann::json report_to_json(const WindingExperimentResult& r, const ExperimentConfig& cfg);
nlohmann::json report_to_json(const IndexPointwiseResult& r, const ExperimentConfig& cfg);
nlohmann::json report_to_json(const VervaatCheckResult& r, const ExperimentConfig& cfg);
nlohmann::json report_to_json(const ConvergenceReport& r, const ExperimentConfig& cfg);
nlohmann::json report_to_json(const SideProbabilityReport& r);

}  // namespace loophull
