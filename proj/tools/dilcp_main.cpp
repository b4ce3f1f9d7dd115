#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "dilcp/cpsim/contact.hpp"
#include "dilcp/error.hpp"
#include "dilcp/graphgen/graph.hpp"
#include "dilcp/harness/config.hpp"
#include "dilcp/harness/experiment.hpp"
#include "dilcp/harness/oracle_check.hpp"
#include "dilcp/percolate/percolate.hpp"
#include "dilcp/theory/predictions.hpp"
#include "dilcp/theory/theory.hpp"

namespace {

using namespace dilcp;

struct GraphOptions {
  std::string family = "path1d";
  std::size_t n = 100;
  double mu = 1.0;
  std::uint64_t seed = 1;
  std::string mode = "bond";
  double p = 1.0;
  std::string graph_file;
  std::string mask_file;

  void attach(CLI::App* app) {
    app->add_option("--family", family, "path1d, lattice2d or erdos_renyi")
        ->check(CLI::IsMember({"path1d", "lattice2d", "erdos_renyi"}));
    app->add_option("-n,--size", n, "vertex count (side L for lattice2d)");
    app->add_option("--mu", mu, "mean degree for erdos_renyi");
    app->add_option("--seed", seed, "seed for graph and mask");
    app->add_option("--mode", mode, "dilution mode")->check(CLI::IsMember({"bond", "site"}));
    app->add_option("-p,--keep", p, "keep probability");
    app->add_option("--graph", graph_file, "read the base graph from an edge-list file");
    app->add_option("--mask", mask_file, "read the dilution mask from a file (needs --graph)");
  }

  graphgen::GraphPtr base() const {
    if (!graph_file.empty()) {
      std::ifstream in(graph_file);
      if (!in) throw IoError(fmt::format("cannot open {}", graph_file));
      return std::make_shared<const graphgen::Graph>(graphgen::read_edge_list(in));
    }
    if (family == "path1d") return std::make_shared<const graphgen::Graph>(graphgen::gen_path(n));
    if (family == "lattice2d") return std::make_shared<const graphgen::Graph>(graphgen::gen_lattice2d(n));
    return std::make_shared<const graphgen::Graph>(graphgen::gen_erdos_renyi(n, mu, seed));
  }

  graphgen::DilutedGraph diluted() const {
    auto g = base();
    if (!mask_file.empty()) {
      std::ifstream in(mask_file);
      if (!in) throw IoError(fmt::format("cannot open {}", mask_file));
      return graphgen::read_mask(in, std::move(g));
    }
    return mode == "site" ? graphgen::dilute_sites(std::move(g), p, seed) : graphgen::dilute_bonds(std::move(g), p, seed);
  }
};

// Writes to the named file, or stdout when the name is empty.
template <class Fn>
void emit(const std::string& path, Fn&& fn) {
  if (path.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError(fmt::format("cannot write {}", path));
  fn(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contact process on randomly diluted graphs"};
  app.require_subcommand(1);

  GraphOptions gen_opts;
  std::string gen_out;
  std::string gen_mask_out;
  auto* gen = app.add_subcommand("gen", "generate a graph and write its edge list and mask");
  gen_opts.attach(gen);
  gen->add_option("-o,--out", gen_out, "edge-list output (stdout if omitted)");
  gen->add_option("--mask-out", gen_mask_out, "mask output");

  GraphOptions perc_opts;
  std::string perc_what = "clusters";
  std::size_t perc_restarts = 8;
  double perc_strip = 3.0;
  std::string perc_out;
  auto* perc = app.add_subcommand("percolate", "structural statistics of a diluted graph");
  perc_opts.attach(perc);
  perc->add_option("--analysis", perc_what, "clusters, longest-path, exact-path, max-run, crossing, staircase")
      ->check(CLI::IsMember({"clusters", "longest-path", "exact-path", "max-run", "crossing", "staircase"}));
  perc->add_option("--restarts", perc_restarts, "DFS restarts for longest-path");
  perc->add_option("--strip-constant", perc_strip, "C in the strip height C log L");
  perc->add_option("-o,--out", perc_out, "CSV output (stdout if omitted)");

  GraphOptions sim_opts;
  double sim_lambda = 2.0;
  double sim_tmax = 100.0;
  std::size_t sim_reps = 1;
  harness::ScheduleSpec sim_schedule;
  std::string sim_out;
  auto* sim = app.add_subcommand("simulate", "run the contact process");
  sim_opts.attach(sim);
  sim->add_option("--lambda", sim_lambda, "birth rate per edge");
  sim->add_option("--t-max", sim_tmax, "time horizon");
  sim->add_option("--reps", sim_reps, "replicates; more than one writes the extinction summary");
  sim->add_option("--t0", sim_schedule.t0, "first sample time");
  sim->add_option("--ratio", sim_schedule.ratio, "geometric sample ratio");
  sim->add_option("--samples", sim_schedule.count, "number of sample times");
  sim->add_option("-o,--out", sim_out, "CSV output (stdout if omitted)");

  std::string th_op = "alpha";
  double th_t = 1e5, th_a = 1.0, th_b = 0.5, th_nu = 0.5, th_A = 1.0, th_n = 1e5, th_p = 0.5, th_gamma2 = 0.0;
  std::size_t th_s = 10;
  std::string th_regime;
  auto* th = app.add_subcommand("theory", "evaluate closed forms and predictions");
  th->add_option("--op", th_op, "alpha, cluster-pmf, noest-integral, noest-asymptotic, er-saddle, er-integral, "
                                "largest-cluster, predict")
      ->check(CLI::IsMember({"alpha", "cluster-pmf", "noest-integral", "noest-asymptotic", "er-saddle",
                             "er-integral", "largest-cluster", "predict"}));
  th->add_option("--t", th_t);
  th->add_option("--a", th_a);
  th->add_option("--b", th_b);
  th->add_option("--nu", th_nu);
  th->add_option("--A", th_A, "Arrhenius rate");
  th->add_option("--N", th_n, "system size");
  th->add_option("--s", th_s, "cluster size");
  th->add_option("--regime", th_regime, "regime for --op predict");
  th->add_option("--p", th_p);
  th->add_option("--gamma2", th_gamma2);
  std::vector<std::string> th_constants;
  th->add_option("--const", th_constants, "extra constants name=value for --op predict");

  harness::OracleCheckOptions oc_opts;
  auto* oc = app.add_subcommand("oracle-check", "compare simulator and structure code against exact oracles");
  oc->add_option("--reps", oc_opts.replicates, "replicates for the K2 and single-vertex checks");
  oc->add_option("--graph-reps", oc_opts.graph_replicates, "replicates per random graph");
  oc->add_option("--seed", oc_opts.seed);
  oc->add_option("--corrupt-lambda", oc_opts.lambda_corruption, "test hook: scale the simulated lambda");

  std::string ex_name;
  std::string ex_config;
  std::optional<std::uint64_t> ex_seed;
  std::optional<std::string> ex_out;
  auto* ex = app.add_subcommand("experiment", "run a named experiment from a JSON config");
  ex->add_option("name", ex_name, "experiment name")->required();
  ex->add_option("--config", ex_config, "JSON config file")->required();
  ex->add_option("--seed", ex_seed, "override the config seed");
  ex->add_option("--out", ex_out, "override the output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*gen) {
      const auto dg = gen_opts.diluted();
      emit(gen_out, [&](std::ostream& os) { graphgen::write_edge_list(os, dg.base()); });
      if (!gen_mask_out.empty()) emit(gen_mask_out, [&](std::ostream& os) { graphgen::write_mask(os, dg); });
    } else if (*perc) {
      const auto dg = perc_opts.diluted();
      emit(perc_out, [&](std::ostream& os) {
        if (perc_what == "clusters") {
          percolate::write_cluster_csv(os, percolate::components(dg));
        } else if (perc_what == "longest-path") {
          percolate::write_path_csv(os, percolate::longest_path_dfs(dg, perc_restarts, perc_opts.seed));
        } else if (perc_what == "exact-path") {
          fmt::print(os, "longest_path\n{}\n", percolate::longest_path_exact(dg));
        } else if (perc_what == "max-run") {
          fmt::print(os, "max_active_run\n{}\n", percolate::max_active_run(dg));
        } else if (perc_what == "crossing") {
          const auto rect = percolate::full_rect(dg);
          fmt::print(os, "left_right,top_bottom\n{},{}\n",
                     percolate::has_crossing(dg, rect, percolate::Orientation::left_right) ? 1 : 0,
                     percolate::has_crossing(dg, rect, percolate::Orientation::top_bottom) ? 1 : 0);
        } else {
          const auto path = percolate::staircase_long_path(dg, perc_strip);
          if (!path) throw Error("staircase construction failed: a required crossing is missing");
          percolate::write_path_csv(os, *path);
        }
      });
    } else if (*sim) {
      const auto dg = sim_opts.diluted();
      const auto schedule = sim_schedule.times();
      emit(sim_out, [&](std::ostream& os) {
        if (sim_reps <= 1) {
          cpsim::write_trajectory_csv(os, cpsim::run_contact(dg, sim_lambda, sim_tmax, schedule, sim_opts.seed));
        } else {
          const auto records = cpsim::survival_times(dg, sim_lambda, sim_reps, sim_tmax, sim_opts.seed);
          cpsim::write_extinction_csv(os, records);
        }
      });
    } else if (*th) {
      if (th_op == "alpha") {
        fmt::print("{:.12g}\n", theory::alpha_nu(th_nu));
      } else if (th_op == "cluster-pmf") {
        fmt::print("{:.12g}\n", theory::cluster_pmf(th_s, th_nu));
      } else if (th_op == "noest-integral") {
        fmt::print("{:.12g}\n", theory::noest_u_integral(th_t, th_a, th_b));
      } else if (th_op == "noest-asymptotic") {
        fmt::print("{:.12g}\n", theory::noest_u_asymptotic(th_t, th_a, th_b));
      } else if (th_op == "er-saddle") {
        const auto s = theory::er_u_saddle(th_t, th_nu, th_A);
        fmt::print("u,theta,s0\n{:.12g},{:.12g},{:.12g}\n", s.u, s.theta, s.s0);
      } else if (th_op == "er-integral") {
        fmt::print("{:.12g}\n", theory::er_u_integral(th_t, th_nu, th_A));
      } else if (th_op == "largest-cluster") {
        fmt::print("{:.12g}\n", theory::largest_cluster_asymptotic(th_n, th_nu));
      } else {
        if (th_regime.empty()) throw UsageError("--op predict needs --regime");
        std::map<std::string, double> params;
        if (th->count("--p")) params["p"] = th_p;
        if (th->count("--nu")) params["nu"] = th_nu;
        if (th->count("--gamma2")) params["gamma2"] = th_gamma2;
        if (th->count("--A")) params["A"] = th_A;
        for (const auto& kv : th_constants) {
          const auto eq = kv.find('=');
          if (eq == std::string::npos) throw UsageError(fmt::format("--const expects name=value, got '{}'", kv));
          params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        }
        const auto pred = theory::scaling_predictions(theory::parse_regime(th_regime), params);
        std::cout << pred.to_json().dump(2) << '\n';
      }
    } else if (*oc) {
      const auto report = harness::oracle_check(oc_opts);
      harness::print_report(std::cout, report);
      return report.all_passed() ? 0 : 1;
    } else if (*ex) {
      auto cfg = harness::load_config(ex_config);
      if (cfg.experiment != ex_name) {
        throw UsageError(fmt::format("config names experiment '{}' but '{}' was requested", cfg.experiment, ex_name));
      }
      harness::RunOptions run;
      run.seed = ex_seed;
      if (ex_out) run.out = *ex_out;
      const auto summary = harness::run_experiment(cfg, run);
      fmt::print("wrote {} ({} records)\n", ex_out ? *ex_out : cfg.output, summary["records"].size());
    }
  } catch (const UsageError& e) {
    fmt::print(std::cerr, "usage error: {}\n", e.what());
    return 2;
  } catch (const IoError& e) {
    fmt::print(std::cerr, "i/o error: {}\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return 1;
  }
  return 0;
}
