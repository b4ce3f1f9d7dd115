#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "dilcp/error.hpp"
#include "dilcp/harness/experiment.hpp"
#include "dilcp/harness/fit.hpp"
#include "dilcp/harness/kernels.hpp"
#include "dilcp/harness/stats.hpp"
#include "dilcp/parallel.hpp"
#include "dilcp/percolate/percolate.hpp"
#include "dilcp/theory/predictions.hpp"
#include "dilcp/theory/theory.hpp"

namespace dilcp::harness {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string num(double x) { return fmt::format("{:.10g}", x); }

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError(fmt::format("cannot write {}", path.string()));
  return out;
}

json fit_json(const FitResult& f) {
  return {{"slope", f.slope},       {"intercept", f.intercept},   {"r_squared", f.r_squared},
          {"window_lo", f.window_lo}, {"window_hi", f.window_hi}, {"points", f.points},
          {"slope_stderr", f.slope_stderr}};
}

json comparison(const std::string& name, double fitted, double predicted) {
  return {{"name", name}, {"fitted", fitted}, {"predicted", predicted}, {"ratio", fitted / predicted}};
}

struct Context {
  ExperimentConfig cfg;
  fs::path out;
  std::vector<double> schedule;
  std::map<double, Gamma2Estimate> gamma2_cache;

  const Gamma2Estimate& gamma2(double lambda) {
    auto it = gamma2_cache.find(lambda);
    if (it != gamma2_cache.end()) return it->second;
    const Gamma2Spec spec = cfg.gamma2.value_or(Gamma2Spec{});
    auto est = estimate_gamma2_paths(spec.sizes, lambda, spec.replicates, spec.t_max, cfg.seed);
    return gamma2_cache.emplace(lambda, std::move(est)).first->second;
  }

  json gamma2_json(double lambda) {
    const auto& est = gamma2(lambda);
    json rows = json::array();
    for (const auto& r : est.rows) {
      rows.push_back({{"n", r.size}, {"median", r.median}, {"mean", r.mean}, {"censored", r.censored}});
    }
    return {{"fit", fit_json(est.fit)}, {"rows", rows}};
  }
};

graphgen::DilutionMode mode_of(const ExperimentConfig& cfg) {
  return cfg.dilution.mode == "site" ? graphgen::DilutionMode::site : graphgen::DilutionMode::bond;
}

GraphFactory make_factory(const ExperimentConfig& cfg, std::size_t n, double p) {
  const auto mode = mode_of(cfg);
  auto dilute = [mode, p](graphgen::GraphPtr base, std::uint64_t seed) {
    return mode == graphgen::DilutionMode::site ? graphgen::dilute_sites(std::move(base), p, seed)
                                                : graphgen::dilute_bonds(std::move(base), p, seed);
  };
  if (cfg.graph.family == "erdos_renyi") {
    const double mu = cfg.graph.mu;
    return [=](std::uint64_t seed) {
      return dilute(std::make_shared<const graphgen::Graph>(graphgen::gen_erdos_renyi(n, mu, seed)), seed);
    };
  }
  graphgen::GraphPtr base = cfg.graph.family == "path1d"
                                ? std::make_shared<const graphgen::Graph>(graphgen::gen_path(n))
                                : std::make_shared<const graphgen::Graph>(graphgen::gen_lattice2d(n));
  return [=](std::uint64_t seed) { return dilute(base, seed); };
}

Window default_window(const Context& ctx) {
  if (ctx.cfg.fit_window) return *ctx.cfg.fit_window;
  return {std::max(1.0, ctx.cfg.t_max / 100.0), ctx.cfg.t_max};
}

// Mean of the longest DFS path length over replicate graphs.
double mean_dfs_length(const GraphFactory& make, std::size_t reps, std::uint64_t seed) {
  std::vector<double> lengths(reps);
  parallel_for(reps, [&](std::size_t i) {
    lengths[i] = static_cast<double>(percolate::longest_path_dfs(make(seed + i), 4, seed + i).length());
  });
  return mean(lengths);
}

json run_griffiths(Context& ctx, theory::Regime regime) {
  const auto& cfg = ctx.cfg;
  auto agg = open_out(ctx.out / "aggregate.csv");
  agg << "n,p,lambda,time,mean_u,sem_u\n";
  json records = json::array();
  for (auto n : cfg.graph.sizes) {
    for (double p : cfg.dilution.p) {
      for (double lambda : cfg.lambda) {
        const auto make = make_factory(cfg, n, p);
        const auto curve = mean_density(make, lambda, cfg.replicates, cfg.t_max, ctx.schedule, cfg.seed, true);
        for (std::size_t i = 0; i < curve.trajectories.size(); ++i) {
          auto f = open_out(ctx.out / "replicates" /
                            fmt::format("traj_n{}_p{}_l{}_rep{}.csv", n, num(p), num(lambda), i));
          cpsim::write_trajectory_csv(f, curve.trajectories[i]);
        }
        for (std::size_t k = 0; k < curve.times.size(); ++k) {
          fmt::print(agg, "{},{},{},{},{},{}\n", n, num(p), num(lambda), num(curve.times[k]), num(curve.mean_u[k]),
                     num(curve.sem_u[k]));
        }
        json rec{{"n", n}, {"p", p}, {"lambda", lambda}, {"censored", curve.censored}};
        const auto points = zip_points(curve.times, curve.mean_u);
        FitResult fit;
        try {
          fit = fit_power_law(points, default_window(ctx));
        } catch (const SizeError& e) {
          rec["fit_error"] = e.what();
          records.push_back(rec);
          continue;
        }
        rec["fit"] = fit_json(fit);
        const double decay = -fit.slope;
        const double g2 = ctx.gamma2(lambda).fit.slope;
        rec["gamma2"] = ctx.gamma2_json(lambda);
        std::map<std::string, double> params{{"gamma2", g2}};
        json comparisons = json::array();
        if (regime == theory::Regime::griffiths_1d) {
          params["p"] = p;
        } else if (regime == theory::Regime::griffiths_er) {
          const double nu = p * cfg.graph.mu;
          params["nu"] = nu;
          std::vector<std::size_t> sizes{2, 3, 4, 5, 6, 7, 8, 9, 10};
          params["A"] = arrhenius_table(sizes, lambda).fit.slope;
        } else {
          params["p"] = p;
          const double length = mean_dfs_length(make, cfg.replicates, cfg.seed);
          params["eta2"] = length / std::log(static_cast<double>(n) * static_cast<double>(n));
        }
        try {
          const auto pred = theory::scaling_predictions(regime, params);
          rec["prediction"] = pred.to_json();
          comparisons.push_back(comparison("decay_exponent", decay, pred.constants.at("decay_exponent")));
          comparisons.push_back(comparison("survival_exponent_literal", decay, pred.value));
          if (pred.constants.count("theta")) {
            comparisons.push_back(comparison("theta", decay, pred.constants.at("theta")));
          }
        } catch (const Error& e) {
          rec["prediction_error"] = e.what();
        }
        rec["comparisons"] = comparisons;
        records.push_back(rec);
      }
    }
  }
  return records;
}

json run_supercritical(Context& ctx, theory::Regime regime) {
  const auto& cfg = ctx.cfg;
  auto agg = open_out(ctx.out / "aggregate.csv");
  agg << "n,p,lambda,median_extinction,mean_extinction,censored,replicates\n";
  json records = json::array();
  const bool lattice = cfg.graph.family == "lattice2d";
  for (double p : cfg.dilution.p) {
    for (double lambda : cfg.lambda) {
      std::vector<double> xs;
      std::vector<double> ys;
      std::vector<std::uint8_t> censored_median;
      std::vector<double> eta;
      for (auto n : cfg.graph.sizes) {
        const auto make = make_factory(cfg, n, p);
        std::vector<cpsim::SurvivalRecord> recs(cfg.replicates);
        parallel_for(cfg.replicates, [&](std::size_t i) {
          const auto traj = cpsim::run_contact(make(cfg.seed + i), lambda, cfg.t_max, {}, cfg.seed + i);
          recs[i] = {traj.extinction_time, traj.censored};
        });
        auto f = open_out(ctx.out / "replicates" / fmt::format("extinction_n{}_p{}_l{}.csv", n, num(p), num(lambda)));
        cpsim::write_extinction_csv(f, recs);
        std::vector<double> times;
        std::size_t censored = 0;
        for (const auto& r : recs) {
          times.push_back(r.time);
          censored += r.censored;
        }
        const double med = median(times);
        const double vertices = lattice ? static_cast<double>(n * n) : static_cast<double>(n);
        fmt::print(agg, "{},{},{},{},{},{},{}\n", n, num(p), num(lambda), num(med), num(mean(times)), censored,
                   cfg.replicates);
        xs.push_back(lattice ? vertices / std::log(vertices) : vertices);
        ys.push_back(med);
        censored_median.push_back(2 * censored >= cfg.replicates);
        const double length = mean_dfs_length(make, cfg.replicates, cfg.seed);
        eta.push_back(lattice ? length * std::log(vertices) / vertices : length / vertices);
      }
      json rec{{"p", p}, {"lambda", lambda}, {"abscissa", lattice ? "N/log N" : "N"}};
      try {
        const auto fit = estimate_gamma2(xs, ys, censored_median);
        rec["fit"] = fit_json(fit);
        std::map<std::string, double> params{{"gamma2", ctx.gamma2(lambda).fit.slope}};
        params[lattice ? "eta2" : "eta_er"] = mean(eta);
        rec["gamma2"] = ctx.gamma2_json(lambda);
        const auto pred = theory::scaling_predictions(regime, params);
        rec["prediction"] = pred.to_json();
        rec["comparisons"] = json::array({comparison("rate", fit.slope, pred.value)});
      } catch (const Error& e) {
        rec["fit_error"] = e.what();
      }
      records.push_back(rec);
    }
  }
  return records;
}

json run_critical(Context& ctx, theory::Regime regime) {
  const auto& cfg = ctx.cfg;
  const double p = cfg.dilution.p.front();
  ScalingFit scaling;
  if (regime == theory::Regime::critical_er) {
    scaling = er_longest_path_scaling(cfg.graph.sizes, cfg.graph.mu, p, cfg.replicates, 4, cfg.seed);
  } else {
    scaling = lattice_crossing_scaling(cfg.graph.sizes, p, cfg.replicates, cfg.seed);
  }
  auto agg = open_out(ctx.out / "aggregate.csv");
  agg << "n,mean_length,sem_length,samples\n";
  for (const auto& pt : scaling.points) {
    fmt::print(agg, "{},{},{},{}\n", num(pt.n), num(pt.mean), num(pt.sem), pt.samples);
  }
  const auto pred = theory::scaling_predictions(regime, {});
  json rec{{"p", p}, {"statistic", regime == theory::Regime::critical_er ? "longest_path_dfs" : "shortest_lr_crossing"},
           {"fit", fit_json(scaling.fit)}, {"prediction", pred.to_json()}};
  rec["comparisons"] = json::array({comparison("exponent", scaling.fit.slope, pred.value)});
  return json::array({rec});
}

json run_arrhenius(Context& ctx) {
  const auto& cfg = ctx.cfg;
  auto agg = open_out(ctx.out / "aggregate.csv");
  agg << "lambda,size,exact_mean_extinction\n";
  json records = json::array();
  for (double lambda : cfg.lambda) {
    const auto table = arrhenius_table(cfg.graph.sizes, lambda);
    for (std::size_t i = 0; i < table.sizes.size(); ++i) {
      fmt::print(agg, "{},{},{}\n", num(lambda), num(table.sizes[i]), num(table.mean_times[i]));
    }
    records.push_back({{"lambda", lambda}, {"fit", fit_json(table.fit)}, {"arrhenius_rate", table.fit.slope}});
  }
  return records;
}

json run_phase_scan(Context& ctx) {
  const auto& cfg = ctx.cfg;
  auto agg = open_out(ctx.out / "aggregate.csv");
  agg << "n,p,lambda,u_tmax,sem_u_tmax\n";
  const std::vector<double> at{cfg.t_max};
  json records = json::array();
  for (auto n : cfg.graph.sizes) {
    for (double p : cfg.dilution.p) {
      for (double lambda : cfg.lambda) {
        const auto curve = mean_density(make_factory(cfg, n, p), lambda, cfg.replicates, cfg.t_max, at, cfg.seed);
        fmt::print(agg, "{},{},{},{},{}\n", n, num(p), num(lambda), num(curve.mean_u[0]), num(curve.sem_u[0]));
        records.push_back({{"n", n}, {"p", p}, {"lambda", lambda}, {"u_tmax", curve.mean_u[0]}});
      }
    }
  }
  return records;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"griffiths-1d",     "griffiths-er",     "griffiths-2d",
                                              "supercrit-er",     "supercrit-2d",     "critical-line-er",
                                              "critical-line-2d", "arrhenius",        "phase-scan"};
  return names;
}

json run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), config.experiment) == names.end()) {
    throw UsageError(fmt::format("unknown experiment '{}'", config.experiment));
  }
  Context ctx;
  ctx.cfg = config;
  if (options.seed) ctx.cfg.seed = *options.seed;
  if (options.out) ctx.cfg.output = options.out->string();
  ctx.cfg.validate();
  ctx.out = ctx.cfg.output;
  ctx.schedule = ctx.cfg.schedule.times();
  std::error_code ec;
  fs::create_directories(ctx.out / "replicates", ec);
  if (ec) throw IoError(fmt::format("cannot create output directory {}: {}", ctx.out.string(), ec.message()));
  save_config(ctx.cfg, ctx.out / "config.json");

  const auto& name = ctx.cfg.experiment;
  json records;
  if (name == "griffiths-1d") {
    records = run_griffiths(ctx, theory::Regime::griffiths_1d);
  } else if (name == "griffiths-er") {
    records = run_griffiths(ctx, theory::Regime::griffiths_er);
  } else if (name == "griffiths-2d") {
    records = run_griffiths(ctx, theory::Regime::griffiths_2d);
  } else if (name == "supercrit-er") {
    records = run_supercritical(ctx, theory::Regime::supercrit_er);
  } else if (name == "supercrit-2d") {
    records = run_supercritical(ctx, theory::Regime::supercrit_2d);
  } else if (name == "critical-line-er") {
    records = run_critical(ctx, theory::Regime::critical_er);
  } else if (name == "critical-line-2d") {
    records = run_critical(ctx, theory::Regime::critical_2d);
  } else if (name == "arrhenius") {
    records = run_arrhenius(ctx);
  } else {
    records = run_phase_scan(ctx);
  }

  json summary{{"schema_version", kSummarySchemaVersion},
               {"experiment", name},
               {"seed", ctx.cfg.seed},
               {"records", records}};
  auto out = open_out(ctx.out / "summary.json");
  out << summary.dump(2) << '\n';
  return summary;
}

}  // namespace dilcp::harness
