#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "midpoint/diagnostics.hpp"
#include "midpoint/solver.hpp"

namespace midpoint::cli {

/// Schema violation; the message names the offending key path.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MappingSpec {
  std::string kind = "flip";  // flip | affine
  std::vector<std::vector<double>> A;
  std::vector<double> b;
  /// unit | geometric | harmonic; absent selects the mapping's default.
  std::optional<std::string> envelope;

  friend bool operator==(const MappingSpec&, const MappingSpec&) = default;
};

struct ContractionSpec {
  std::string kind = "contraction_half";  // contraction_half | scale
  std::optional<double> alpha;

  friend bool operator==(const ContractionSpec&, const ContractionSpec&) = default;
};

struct ScheduleSpec {
  std::string family = "paper";  // paper | power | custom
  std::optional<double> s;
  std::optional<double> b_const;
  /// Rows [a, b, c, k] for the custom family.
  std::vector<std::array<double, 4>> table;
  std::optional<std::string> envelope;
  std::optional<double> epsilon;

  friend bool operator==(const ScheduleSpec&, const ScheduleSpec&) = default;
};

struct ExperimentConfig {
  MappingSpec mapping;
  ContractionSpec contraction;
  ScheduleSpec schedule;
  std::vector<std::string> schemes{"AGVIM"};
  std::vector<double> x1;
  double norm_p = 2.0;
  double tol_step = 1e-8;
  double tol_inner = 1e-12;
  long max_inner = 10'000;
  long max_outer = 10'000;
  long min_outer = 0;
  long max_power_composition = Mapping::kDefaultCompositionCap;
  bool force = false;
  double normal_structure = std::sqrt(2.0);
  long envelope_horizon = 20;
  long envelope_samples = 1000;
  std::string output = "out";
  std::optional<std::uint64_t> seed;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const ExperimentConfig& cfg);

Mapping build_mapping(const MappingSpec& spec);
Contraction build_contraction(const ContractionSpec& spec);
Schedule build_schedule(const ScheduleSpec& spec);
SchemeKind build_scheme(const std::string& name);
/// Solver configuration for one scheme of the experiment.
SolverConfig build_solver_config(const ExperimentConfig& cfg, const std::string& scheme);

}  // namespace midpoint::cli
