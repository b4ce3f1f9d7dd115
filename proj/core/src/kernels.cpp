#include <cmath>
#include <memory>

#include <fmt/format.h>

#include "dilcp/error.hpp"
#include "dilcp/harness/fit.hpp"
#include "dilcp/harness/kernels.hpp"
#include "dilcp/harness/stats.hpp"
#include "dilcp/oracle/oracle.hpp"
#include "dilcp/parallel.hpp"
#include "dilcp/percolate/percolate.hpp"

namespace dilcp::harness {

DensityCurve mean_density(const GraphFactory& make, double lambda, std::size_t reps, double t_max,
                          std::span<const double> schedule, std::uint64_t seed, bool keep_trajectories) {
  if (reps == 0) throw ParameterError("mean_density needs at least one replicate");
  std::vector<std::vector<double>> u(reps);
  std::vector<cpsim::Trajectory> trajectories(reps);
  std::vector<std::uint8_t> censored(reps, 0);
  parallel_for(reps, [&](std::size_t i) {
    const auto dg = make(seed + i);
    auto traj = cpsim::run_contact(dg, lambda, t_max, schedule, seed + i);
    const auto counts = cpsim::counts_on(traj, schedule);
    const double n = static_cast<double>(dg.vertex_count());
    u[i].reserve(counts.size());
    for (auto c : counts) u[i].push_back(static_cast<double>(c) / n);
    censored[i] = traj.censored;
    if (keep_trajectories) trajectories[i] = std::move(traj);
  });

  DensityCurve curve;
  curve.times.assign(schedule.begin(), schedule.end());
  curve.replicates = reps;
  for (auto c : censored) curve.censored += c;
  std::vector<double> column(reps);
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    for (std::size_t i = 0; i < reps; ++i) column[i] = u[i][k];
    curve.mean_u.push_back(mean(column));
    curve.sem_u.push_back(sem(column));
  }
  if (keep_trajectories) curve.trajectories = std::move(trajectories);
  return curve;
}

SurvivalSummary survival_summary(const DilutedGraph& dg, double lambda, std::size_t reps, double t_max,
                                 std::uint64_t seed) {
  SurvivalSummary s;
  s.size = static_cast<double>(dg.vertex_count());
  s.records = cpsim::survival_times(dg, lambda, reps, t_max, seed);
  std::vector<double> times;
  for (const auto& r : s.records) {
    times.push_back(r.time);
    s.censored += r.censored;
  }
  s.mean = mean(times);
  s.median = median(times);
  return s;
}

Gamma2Estimate estimate_gamma2_paths(std::span<const std::size_t> sizes, double lambda, std::size_t reps,
                                     double t_max, std::uint64_t seed) {
  Gamma2Estimate est;
  std::vector<double> ns;
  std::vector<double> medians;
  std::vector<std::uint8_t> censored_flags;
  for (auto n : sizes) {
    auto base = std::make_shared<const graphgen::Graph>(graphgen::gen_path(n));
    const auto dg = graphgen::undiluted(base);
    est.rows.push_back(survival_summary(dg, lambda, reps, t_max, seed));
    ns.push_back(static_cast<double>(n));
    medians.push_back(est.rows.back().median);
    censored_flags.push_back(est.rows.back().median_censored());
  }
  est.fit = estimate_gamma2(ns, medians, censored_flags);
  return est;
}

ArrheniusTable arrhenius_table(std::span<const std::size_t> sizes, double lambda) {
  ArrheniusTable table;
  std::vector<double> logs;
  for (auto s : sizes) {
    auto base = std::make_shared<const graphgen::Graph>(graphgen::gen_path(s));
    const double m = oracle::exact_mean_extinction(graphgen::undiluted(base), lambda);
    table.sizes.push_back(static_cast<double>(s));
    table.mean_times.push_back(m);
    logs.push_back(std::log(m));
  }
  table.fit = fit_line(table.sizes, logs);
  return table;
}

namespace {

ScalingFit finish_scaling(std::vector<ScalingPoint> points) {
  ScalingFit out;
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& p : points) {
    if (!(p.mean > 0.0)) throw NumericalError(fmt::format("scaling statistic is zero at N = {}", p.n));
    xs.push_back(std::log(p.n));
    ys.push_back(std::log(p.mean));
  }
  out.fit = fit_line(xs, ys);
  out.fit.window_lo = points.front().n;
  out.fit.window_hi = points.back().n;
  out.points = std::move(points);
  return out;
}

}  // namespace

ScalingFit er_longest_path_scaling(std::span<const std::size_t> sizes, double mu, double p, std::size_t seeds,
                                   std::size_t restarts, std::uint64_t seed) {
  if (seeds == 0) throw ParameterError("er_longest_path_scaling needs at least one seed");
  std::vector<ScalingPoint> points;
  for (auto n : sizes) {
    std::vector<double> lengths(seeds);
    parallel_for(seeds, [&](std::size_t i) {
      auto base = std::make_shared<const graphgen::Graph>(graphgen::gen_erdos_renyi(n, mu, seed + i));
      const auto dg = graphgen::dilute_bonds(base, p, seed + i);
      lengths[i] = static_cast<double>(percolate::longest_path_dfs(dg, restarts, seed + i).length());
    });
    points.push_back({static_cast<double>(n), mean(lengths), sem(lengths), seeds});
  }
  return finish_scaling(std::move(points));
}

ScalingFit lattice_crossing_scaling(std::span<const std::size_t> sides, double p, std::size_t samples,
                                    std::uint64_t seed) {
  if (samples == 0) throw ParameterError("lattice_crossing_scaling needs at least one sample");
  std::vector<ScalingPoint> points;
  for (auto side : sides) {
    auto base = std::make_shared<const graphgen::Graph>(graphgen::gen_lattice2d(side));
    std::vector<double> lengths;
    for (std::uint64_t s = seed; lengths.size() < samples && s < seed + 20 * samples; ++s) {
      const auto dg = graphgen::dilute_bonds(base, p, s);
      if (auto path = percolate::find_crossing(dg, percolate::full_rect(dg), percolate::Orientation::left_right)) {
        lengths.push_back(static_cast<double>(path->length()));
      }
    }
    if (lengths.size() < samples) {
      throw NumericalError(fmt::format("only {} of {} crossings found at L = {}", lengths.size(), samples, side));
    }
    const double n = static_cast<double>(side) * static_cast<double>(side);
    points.push_back({n, mean(lengths), sem(lengths), lengths.size()});
  }
  return finish_scaling(std::move(points));
}

}  // namespace dilcp::harness
