#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dilcp/harness/fit.hpp"

namespace dilcp::harness {

inline constexpr int kConfigSchemaVersion = 1;

/// family is path1d, lattice2d or erdos_renyi. sizes are vertex counts,
/// except for lattice2d where they are the side L.
struct GraphSpec {
  std::string family;
  std::vector<std::size_t> sizes;
  double mu = 0.0;
};

struct DilutionSpec {
  std::string mode = "bond";
  std::vector<double> p{1.0};
};

/// Geometric sample times t0, t0 ratio, ..., count of them.
struct ScheduleSpec {
  double t0 = 0.1;
  double ratio = 1.3;
  std::size_t count = 40;

  std::vector<double> times() const;
};

/// Undiluted-path survival runs used to estimate gamma2 for predictions.
struct Gamma2Spec {
  std::vector<std::size_t> sizes{8, 10, 12, 14};
  std::size_t replicates = 100;
  double t_max = 1e6;
};

struct ExperimentConfig {
  std::string experiment;
  GraphSpec graph;
  DilutionSpec dilution;
  std::vector<double> lambda{2.0};
  std::size_t replicates = 10;
  std::uint64_t seed = 1;
  double t_max = 1000.0;
  ScheduleSpec schedule;
  std::string output = "out";
  std::optional<Window> fit_window;
  std::optional<Gamma2Spec> gamma2;

  /// Throws UsageError naming the first violated rule.
  void validate() const;

  nlohmann::json to_json() const;
  /// Strict: unknown keys at any level are UsageErrors.
  static ExperimentConfig from_json(const nlohmann::json& j);
};

ExperimentConfig load_config(const std::filesystem::path& path);
void save_config(const ExperimentConfig& cfg, const std::filesystem::path& path);

}  // namespace dilcp::harness
