#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "dilcp/cpsim/contact.hpp"
#include "dilcp/graphgen/graph.hpp"
#include "dilcp/regression.hpp"

namespace dilcp::harness {

using graphgen::DilutedGraph;

/// Builds the diluted graph for one replicate from its derived seed.
using GraphFactory = std::function<DilutedGraph(std::uint64_t seed)>;

/// Replicate-averaged density on a fixed schedule.
struct DensityCurve {
  std::vector<double> times;
  std::vector<double> mean_u;
  std::vector<double> sem_u;
  std::size_t replicates = 0;
  std::size_t censored = 0;
  /// Kept only when requested.
  std::vector<cpsim::Trajectory> trajectories;
};

/// Replicate i builds make(seed + i) and runs the contact process with the
/// same derived seed. Replicates run in parallel; the result is independent
/// of the worker count.
DensityCurve mean_density(const GraphFactory& make, double lambda, std::size_t reps, double t_max,
                          std::span<const double> schedule, std::uint64_t seed, bool keep_trajectories = false);

/// Survival-time statistics of one graph. Censored runs enter as t_max, so
/// the median is exact while fewer than half the replicates are censored.
struct SurvivalSummary {
  double size = 0.0;
  double median = 0.0;
  double mean = 0.0;
  std::size_t censored = 0;
  std::vector<cpsim::SurvivalRecord> records;

  bool median_censored() const noexcept { return 2 * censored >= records.size(); }
};

SurvivalSummary survival_summary(const DilutedGraph& dg, double lambda, std::size_t reps, double t_max,
                                 std::uint64_t seed);

/// Median extinction times of undiluted paths and the log-linear fit whose
/// slope estimates gamma2. Throws ParameterError if a median is censored.
struct Gamma2Estimate {
  FitResult fit;
  std::vector<SurvivalSummary> rows;
};

Gamma2Estimate estimate_gamma2_paths(std::span<const std::size_t> sizes, double lambda, std::size_t reps,
                                     double t_max, std::uint64_t seed);

/// Exact mean extinction times of undiluted paths and the fit of their logs
/// against size; the slope is the Arrhenius rate A.
struct ArrheniusTable {
  std::vector<double> sizes;
  std::vector<double> mean_times;
  FitResult fit;
};

ArrheniusTable arrhenius_table(std::span<const std::size_t> sizes, double lambda);

/// Mean of a structural statistic per size and its log-log fit.
struct ScalingPoint {
  double n = 0.0;
  double mean = 0.0;
  double sem = 0.0;
  std::size_t samples = 0;
};

struct ScalingFit {
  std::vector<ScalingPoint> points;
  FitResult fit;
};

/// longest_path_dfs on ER(n, mu) bond-diluted at p, seeds seed + i.
ScalingFit er_longest_path_scaling(std::span<const std::size_t> sizes, double mu, double p, std::size_t seeds,
                                   std::size_t restarts, std::uint64_t seed);

/// Length of the shortest left-right crossing of an L x L bond-diluted lattice,
/// over configurations that have one. Abscissa is N = L^2. Samples are drawn
/// with seeds seed, seed + 1, ... until `samples` crossings are collected
/// (at most 20 times as many attempts).
ScalingFit lattice_crossing_scaling(std::span<const std::size_t> sides, double p, std::size_t samples,
                                    std::uint64_t seed);

}  // namespace dilcp::harness
