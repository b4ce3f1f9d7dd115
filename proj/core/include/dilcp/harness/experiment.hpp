#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dilcp/harness/config.hpp"

namespace dilcp::harness {

inline constexpr int kSummarySchemaVersion = 1;

/// Registered experiment names.
const std::vector<std::string>& experiment_names();

/// Command-line overrides of the config.
struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out;
};

/// Runs a named experiment and writes into the output directory:
///   config.json       the resolved config
///   aggregate.csv     one table per experiment (see README)
///   replicates/       per-replicate CSVs
///   summary.json      fits paired with predictions and their ratios
/// Returns the summary. Unknown experiment names raise UsageError; an
/// unwritable output directory raises IoError.
nlohmann::json run_experiment(const ExperimentConfig& cfg, const RunOptions& options = {});

}  // namespace dilcp::harness
