#include <cmath>
#include <memory>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "dilcp/cpsim/contact.hpp"
#include "dilcp/cpsim/oriented.hpp"
#include "dilcp/harness/oracle_check.hpp"
#include "dilcp/harness/stats.hpp"
#include "dilcp/oracle/oracle.hpp"
#include "dilcp/percolate/percolate.hpp"

namespace dilcp::harness {

namespace {

using graphgen::DilutedGraph;
using graphgen::Graph;

constexpr double kNoCensoring = 1e12;

graphgen::GraphPtr share(Graph g) { return std::make_shared<const Graph>(std::move(g)); }

// Simulated mean extinction time against the oracle, within `z` standard errors.
CheckResult mean_extinction_check(std::string name, const DilutedGraph& dg, double lambda, double corruption,
                                  std::size_t reps, std::uint64_t seed, double z = 3.0) {
  const double exact = oracle::exact_mean_extinction(dg, lambda);
  const auto records = cpsim::survival_times(dg, lambda * corruption, reps, kNoCensoring, seed);
  std::vector<double> times;
  times.reserve(records.size());
  for (const auto& r : records) times.push_back(r.time);
  const double m = mean(times);
  const double se = sem(times);
  const double zscore = (m - exact) / se;
  return {std::move(name), std::abs(zscore) <= z, zscore,
          fmt::format("simulated {:.5f} +- {:.5f}, exact {:.5f}", m, se, exact)};
}

}  // namespace

bool OracleCheckReport::all_passed() const noexcept {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

std::string OracleCheckReport::failures() const {
  std::string out;
  for (const auto& c : checks) {
    if (c.passed) continue;
    if (!out.empty()) out += ", ";
    out += c.name;
  }
  return out;
}

OracleCheckReport oracle_check(const OracleCheckOptions& options) {
  OracleCheckReport report;
  auto& checks = report.checks;
  const auto seed = options.seed;

  {
    const auto dg = graphgen::undiluted(share(graphgen::gen_path(1)));
    checks.push_back(mean_extinction_check("single-vertex", dg, 2.0, options.lambda_corruption, options.replicates,
                                           seed));
  }
  {
    const auto dg = graphgen::undiluted(share(graphgen::gen_path(2)));
    auto check = mean_extinction_check("k2-lambda2", dg, 2.0, options.lambda_corruption, options.replicates, seed + 1);
    const double exact = oracle::exact_mean_extinction(dg, 2.0);
    check.passed = check.passed && std::abs(exact - 2.5) < 1e-9;
    checks.push_back(std::move(check));
  }

  for (std::uint64_t g = 0; g < 10; ++g) {
    const std::size_t n = 3 + g % 6;
    const auto base = share(graphgen::gen_erdos_renyi(n, std::min(2.5, static_cast<double>(n)), seed + 100 + g));
    const auto dg = g % 2 == 0 ? graphgen::dilute_bonds(base, 0.8, seed + 200 + g)
                               : graphgen::dilute_sites(base, 0.7, seed + 200 + g);
    checks.push_back(mean_extinction_check(fmt::format("random-graph-{}(n={},{})", g, n, to_string(dg.mode())), dg,
                                           1.5, options.lambda_corruption, options.graph_replicates, seed + 300 + g));
  }

  {
    bool monotone = true;
    std::string detail;
    for (double lambda : {0.5, 1.0, 2.0, 4.0}) {
      double previous = 0.0;
      for (std::size_t n = 1; n <= 8; ++n) {
        const double m = oracle::exact_mean_extinction(graphgen::undiluted(share(graphgen::gen_path(n))), lambda);
        if (m < previous) {
          monotone = false;
          detail = fmt::format("decrease at n = {}, lambda = {}", n, lambda);
        }
        previous = m;
      }
    }
    for (std::size_t n = 1; n <= 8; ++n) {
      double previous = 0.0;
      for (double lambda : {0.5, 1.0, 2.0, 4.0}) {
        const double m = oracle::exact_mean_extinction(graphgen::undiluted(share(graphgen::gen_path(n))), lambda);
        if (m < previous) {
          monotone = false;
          detail = fmt::format("decrease in lambda at n = {}, lambda = {}", n, lambda);
        }
        previous = m;
      }
    }
    checks.push_back({"path-monotone-n-lambda", monotone, 0.0, detail.empty() ? "n <= 8, lambda in {0.5,1,2,4}" : detail});
  }

  {
    // (n+1) x n box with n = 1: 3 x 2 vertices.
    const auto base = share(graphgen::gen_crossing_box(1));
    for (double p : {0.3, 0.5, 0.7}) {
      const double exact = oracle::exact_crossing_prob(2, 1, p);
      const std::size_t trials = 20000;
      std::size_t hits = 0;
      for (std::size_t i = 0; i < trials; ++i) {
        const auto dg = graphgen::dilute_bonds(base, p, seed + 1000 + i);
        hits += percolate::has_crossing(dg, percolate::full_rect(dg), percolate::Orientation::left_right);
      }
      const double freq = static_cast<double>(hits) / trials;
      const double se = std::sqrt(exact * (1 - exact) / trials);
      const double z = (freq - exact) / se;
      checks.push_back({fmt::format("crossing-mc-vs-exact(p={})", p), std::abs(z) <= 3.0, z,
                        fmt::format("monte carlo {:.4f}, exact {:.4f}", freq, exact)});
    }
  }

  {
    double worst = 0.0;
    for (std::size_t n = 1; n <= 2; ++n) {
      for (double p : {0.1, 0.3, 0.5, 0.8}) {
        const double sum = oracle::exact_crossing_prob(n + 1, n, p, percolate::Orientation::left_right) +
                           oracle::exact_crossing_prob(n, n + 1, 1 - p, percolate::Orientation::top_bottom);
        worst = std::max(worst, std::abs(sum - 1.0));
      }
    }
    checks.push_back({"crossing-duality-identity", worst < 1e-12, worst, "max |P_LR(p) + P_TB*(1-p) - 1|, n in {1,2}"});
  }

  {
    const auto base = share(graphgen::gen_crossing_box(8));
    std::size_t violations = 0;
    for (std::uint64_t i = 0; i < 2000; ++i) {
      const auto dg = graphgen::dilute_bonds(base, 0.5, seed + 5000 + i);
      const auto dual = percolate::dual_config(dg);
      const bool lr = percolate::has_crossing(dg, percolate::full_rect(dg), percolate::Orientation::left_right);
      const bool tb = percolate::has_crossing(dual, percolate::full_rect(dual), percolate::Orientation::top_bottom);
      violations += lr == tb;
    }
    checks.push_back({"duality-xor(9x8)", violations == 0, static_cast<double>(violations), "2000 configurations"});
  }

  {
    std::size_t violations = 0;
    for (std::uint64_t i = 0; i < 100; ++i) {
      const std::size_t n = 5 + i % 11;
      const auto base = share(graphgen::gen_erdos_renyi(n, std::min(3.0, static_cast<double>(n)), seed + 7000 + i));
      const auto dg = graphgen::dilute_bonds(base, 0.9, seed + 8000 + i);
      const auto path = percolate::longest_path_dfs(dg, 3, seed + i);
      if (!percolate::is_valid_path(dg, path) || path.length() > percolate::longest_path_exact(dg)) ++violations;
    }
    checks.push_back({"dfs-le-exact", violations == 0, static_cast<double>(violations), "100 graphs, n <= 15"});
  }

  {
    auto config = cpsim::make_oriented(6, 0.7, 1.0, seed);
    config.row = {1, 0, 0, 0, 1, 0};
    const auto start = config.row;
    const auto dist = oracle::oriented_next_row_dist(start, 0.7);
    std::map<std::uint32_t, std::size_t> observed;
    Rng rng(seed + 9000);
    for (std::size_t i = 0; i < 100000; ++i) {
      config.row = start;
      cpsim::oriented_step(config, rng);
      ++observed[oracle::row_bits(config.row)];
    }
    const auto test = chi_square_gof(observed, dist);
    checks.push_back({"oriented-next-row-chi2", test.p_value >= 0.01, test.statistic,
                      fmt::format("dof {}, p-value {:.4f}", test.dof, test.p_value)});
  }
  return report;
}

void print_report(std::ostream& os, const OracleCheckReport& report) {
  for (const auto& c : report.checks) {
    fmt::print(os, "[{}] {} statistic={:.6g} {}\n", c.passed ? "PASS" : "FAIL", c.name, c.statistic, c.detail);
  }
  fmt::print(os, "{}\n", report.all_passed() ? "all oracle checks passed" : "FAILED: " + report.failures());
}

}  // namespace dilcp::harness
