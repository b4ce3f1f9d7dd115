#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>

#include "dilcp/cpsim/contact.hpp"
#include "dilcp/cpsim/oriented.hpp"
#include "dilcp/error.hpp"
#include "dilcp/graphgen/graph.hpp"
#include "dilcp/harness/stats.hpp"

using namespace dilcp;
using namespace dilcp::cpsim;
using namespace dilcp::graphgen;

namespace {

GraphPtr share(Graph g) { return std::make_shared<const Graph>(std::move(g)); }

std::vector<double> extinction_times(const DilutedGraph& dg, double lambda, std::size_t reps, std::uint64_t seed) {
  std::vector<double> out;
  for (const auto& r : survival_times(dg, lambda, reps, 1e9, seed)) {
    REQUIRE_FALSE(r.censored);
    out.push_back(r.time);
  }
  return out;
}

}  // namespace

TEST_CASE("single isolated vertex dies at rate one") {
  const auto dg = undiluted(share(gen_path(1)));
  const auto times = extinction_times(dg, 3.0, 100000, 1);
  CHECK(std::abs(harness::mean(times) - 1.0) <= 0.02);
  const auto few = extinction_times(dg, 1.0, 10000, 7);
  const auto ks = harness::ks_one_sample(few, [](double t) { return 1.0 - std::exp(-t); });
  CHECK(ks.p_value > 0.01);
}

TEST_CASE("one edge at lambda = 2 has mean extinction 2.5") {
  // Hitting-time system: m1 = 1/(1+l) + l/(1+l) m2 and m2 = 1/2 + m1.
  const double l = 2.0;
  const double m1 = (1.0 / (1.0 + l) + l / (1.0 + l) * 0.5) / (1.0 - l / (1.0 + l));
  const double m2 = 0.5 + m1;
  CHECK(m2 == doctest::Approx(2.5));
  const auto dg = undiluted(share(gen_path(2)));
  const auto times = extinction_times(dg, l, 100000, 11);
  CHECK(std::abs(harness::mean(times) - m2) <= 4.0 * harness::sem(times));
  CHECK(std::abs(harness::mean(times) / m2 - 1.0) <= 0.02);
}

TEST_CASE("bond dilution at p = 0 is a pure-death process") {
  const std::size_t n = 10000;
  const auto dg = dilute_bonds(share(gen_lattice2d(100)), 0.0, 3);
  std::vector<double> schedule;
  for (int k = 0; k < 30; ++k) schedule.push_back(0.1 + 0.2 * k);
  const auto traj = run_contact(dg, 2.0, 1e9, schedule, 5);
  CHECK_FALSE(traj.censored);
  const auto u = counts_on(traj, schedule);
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    const double q = std::exp(-schedule[k]);
    const double se = std::sqrt(q * (1.0 - q) / n);
    CHECK(std::abs(static_cast<double>(u[k]) / n - q) <= 3.0 * se);
  }

  // Extinction is the maximum of N unit exponentials: mean H_N.
  const std::size_t m = 1000;
  const auto isolated = dilute_bonds(share(gen_path(m)), 0.0, 1);
  const auto times = extinction_times(isolated, 2.0, 400, 21);
  double harmonic = 0.0;
  for (std::size_t i = 1; i <= m; ++i) harmonic += 1.0 / static_cast<double>(i);
  CHECK(std::abs(harness::mean(times) - harmonic) <= 4.0 * harness::sem(times));
}

TEST_CASE("run_contact trajectory invariants") {
  const auto dg = dilute_sites(share(gen_lattice2d(12)), 0.8, 4);
  std::vector<double> schedule;
  for (int k = 0; k < 50; ++k) schedule.push_back(0.05 * std::pow(1.2, k));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto traj = run_contact(dg, 1.2, 200.0, schedule, seed);
    REQUIRE_FALSE(traj.samples.empty());
    for (std::size_t i = 1; i < traj.samples.size(); ++i) {
      CHECK(traj.samples[i].time > traj.samples[i - 1].time);
    }
    if (traj.censored) {
      CHECK(traj.extinction_time == 200.0);
      CHECK(traj.samples.back().count > 0);
    } else {
      CHECK(traj.samples.back().count == 0);
      CHECK(traj.samples.back().time == traj.extinction_time);
    }
    CHECK(traj.seed == seed);
    CHECK(traj.lambda == 1.2);
    CHECK(traj.graph_hash == graph_hash(dg));
  }
  const auto a = run_contact(dg, 1.5, 50.0, schedule, 42);
  const auto b = run_contact(dg, 1.5, 50.0, schedule, 42);
  CHECK(a.events == b.events);
  CHECK(a.extinction_time == b.extinction_time);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) CHECK(a.samples[i].count == b.samples[i].count);

  CHECK_THROWS_AS(run_contact(dg, 0.0, 1.0, schedule, 1), ParameterError);
  CHECK_THROWS_AS(run_contact(dg, -1.0, 1.0, schedule, 1), ParameterError);
}

TEST_CASE("samples report the count just before each schedule time") {
  const auto dg = undiluted(share(gen_path(1)));
  const std::vector<double> schedule{0.0, 1e-9};
  const auto traj = run_contact(dg, 1.0, 10.0, schedule, 2);
  REQUIRE(traj.samples.size() >= 2);
  CHECK(traj.samples[0].count == 1);
  CHECK(traj.samples[0].time == 0.0);
}

TEST_CASE("cached rates match recomputation") {
  for (auto mode : {DilutionMode::bond, DilutionMode::site}) {
    const auto g = share(gen_erdos_renyi(300, 4.0, 6));
    const auto dg = mode == DilutionMode::bond ? dilute_bonds(g, 0.6, 2) : dilute_sites(g, 0.6, 2);
    ContactProcess cp(dg, 1.7, 9);
    cp.audit();
    CHECK(cp.total_death_rate() == 300.0);
    for (int i = 0; i < 5000 && cp.occupied_count() > 0; ++i) {
      cp.next_event_time();
      cp.apply_event();
      cp.audit();
    }
    CHECK(cp.events() > 0);
  }
  ContactOptions audited;
  audited.audit_interval = 1;
  const auto dg = dilute_sites(share(gen_lattice2d(8)), 0.7, 1);
  CHECK_NOTHROW(run_contact(dg, 2.0, 30.0, std::vector<double>{1.0, 2.0}, 3, audited));
}

TEST_CASE("inert sites are occupied at start and never give birth") {
  const auto g = share(gen_path(3));
  const DilutedGraph dg(g, DilutionMode::site, {0, 1, 0});
  ContactProcess cp(dg, 5.0, 1);
  CHECK(cp.occupied_count() == 3);
  CHECK(cp.birth_candidates() == 0);
  // With the middle site alone occupied it can fill both inert neighbours.
  const std::vector<Vertex> middle{1};
  ContactProcess mid(dg, 5.0, 1, middle);
  CHECK(mid.birth_candidates() == 2);
  // An inert site alone never spreads.
  const std::vector<Vertex> edge_site{0};
  ContactProcess lone(dg, 5.0, 1, edge_site);
  CHECK(lone.birth_candidates() == 0);
  CHECK(lone.total_birth_rate() == 0.0);
}

TEST_CASE("survival_times") {
  const auto path20 = undiluted(share(gen_path(20)));
  const auto recs = survival_times(path20, 2.0, 20, 1e6, 4);
  REQUIRE(recs.size() == 20);
  const auto censored = std::count_if(recs.begin(), recs.end(), [](const auto& r) { return r.censored; });
  CHECK(censored < 20);

  const auto dg = undiluted(share(gen_path(4)));
  const auto a = survival_times(dg, 1.5, 50, 1e6, 100);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto single = run_contact(dg, 1.5, 1e6, {}, 100 + i);
    CHECK(a[i].time == single.extinction_time);
  }
  const auto capped = survival_times(path20, 3.0, 5, 1.0, 1);
  for (const auto& r : capped) {
    CHECK(r.censored);
    CHECK(r.time == 1.0);
  }
}

TEST_CASE("coupled runs are monotone in the initial set") {
  const auto dg = undiluted(share(gen_path(10)));
  const std::vector<std::vector<Vertex>> initial{{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, {2, 3, 7}, {5}};
  std::vector<double> schedule;
  for (int k = 1; k <= 40; ++k) schedule.push_back(0.25 * k);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto states = harris_coupled_run(dg, 2.0, initial, schedule, seed);
    REQUIRE(states.size() == 3);
    for (std::size_t k = 0; k < schedule.size(); ++k) {
      for (std::size_t v = 0; v < 10; ++v) {
        CHECK(states[1][k][v] <= states[0][k][v]);
        CHECK(states[2][k][v] <= states[0][k][v]);
      }
    }
  }
}

TEST_CASE("coupled runs have the contact-process law") {
  // The full-start marginal of the graphical construction matches run_contact.
  const auto dg = undiluted(share(gen_path(3)));
  const std::vector<std::vector<Vertex>> full{{0, 1, 2}};
  const std::vector<double> at{1.5};
  std::map<int, std::size_t> coupled;
  std::map<int, std::size_t> direct;
  const int reps = 20000;
  for (int s = 0; s < reps; ++s) {
    const auto st = harris_coupled_run(dg, 1.5, full, at, s);
    ++coupled[std::accumulate(st[0][0].begin(), st[0][0].end(), 0)];
    ++direct[static_cast<int>(counts_on(run_contact(dg, 1.5, 10.0, at, 500000 + s), at)[0])];
  }
  for (int c = 0; c <= 3; ++c) {
    const double p1 = static_cast<double>(coupled[c]) / reps;
    const double p2 = static_cast<double>(direct[c]) / reps;
    const double se = std::sqrt((p1 * (1 - p1) + p2 * (1 - p2)) / reps);
    CHECK(std::abs(p1 - p2) <= 4.0 * se + 1e-12);
  }
}

TEST_CASE("disjoint components evolve independently") {
  const auto joint = undiluted(share(Graph(7, {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {5, 6}})));
  const auto left = undiluted(share(gen_path(3)));
  const auto right = undiluted(share(gen_path(4)));
  const std::size_t reps = 4000;
  const auto together = extinction_times(joint, 1.5, reps, 1);
  const auto a = extinction_times(left, 1.5, reps, 100000);
  const auto b = extinction_times(right, 1.5, reps, 200000);
  std::vector<double> separate(reps);
  for (std::size_t i = 0; i < reps; ++i) separate[i] = std::max(a[i], b[i]);
  CHECK(harness::ks_two_sample(together, separate).p_value > 0.01);
}

TEST_CASE("density normalises counts") {
  Trajectory t;
  t.samples = {{0.0, 50}, {1.0, 20}, {2.0, 0}};
  const auto u = density(t, 50);
  REQUIRE(u.size() == 3);
  CHECK(u[0].second == 1.0);
  CHECK(u[1].second == doctest::Approx(0.4));
  CHECK(u[2].second == 0.0);
  CHECK_THROWS(density(t, 0));
}

TEST_CASE("counts_on fills zeros after extinction") {
  Trajectory t;
  t.samples = {{0.5, 4}, {1.0, 3}, {1.7, 0}};
  t.extinction_time = 1.7;
  const std::vector<double> at{0.5, 1.0, 2.0, 4.0};
  CHECK(counts_on(t, at) == std::vector<std::size_t>{4, 3, 0, 0});
}

TEST_CASE("CSV outputs") {
  Trajectory t;
  t.seed = 7;
  t.lambda = 2.0;
  t.graph_hash = 0xabc;
  t.samples = {{0.5, 3}, {1.25, 0}};
  std::ostringstream os;
  write_trajectory_csv(os, t);
  CHECK(os.str() == "# seed=7 lambda=2 graph=0000000000000abc\ntime,count\n0.5,3\n1.25,0\n");
  std::ostringstream es;
  const std::vector<SurvivalRecord> recs{{1.5, false}, {10.0, true}};
  write_extinction_csv(es, recs);
  CHECK(es.str() == "replicate,extinction_time,censored\n0,1.5,0\n1,10,1\n");
}

TEST_CASE("graph_hash separates masks") {
  const auto g = share(gen_lattice2d(5));
  CHECK(graph_hash(dilute_bonds(g, 0.5, 1)) == graph_hash(dilute_bonds(g, 0.5, 1)));
  CHECK(graph_hash(dilute_bonds(g, 0.5, 1)) != graph_hash(dilute_bonds(g, 0.5, 2)));
  CHECK(graph_hash(dilute_bonds(g, 1.0, 1)) != graph_hash(dilute_sites(g, 1.0, 1)));
}

TEST_CASE("oriented model: extremes and parity") {
  const auto dead = run_oriented(8, 0.0, 1.0, 100, 1);
  CHECK_FALSE(dead.censored);
  CHECK(dead.extinction_time == 1.0);

  const auto full = run_oriented(8, 1.0, 1.0, 50, 1);
  CHECK(full.censored);
  for (const auto& s : full.samples) CHECK(s.count == 4);

  auto cfg = make_oriented(10, 0.6, 1.0, 3);
  Rng rng(5);
  for (int g = 0; g < 40; ++g) {
    for (std::size_t m = 0; m < cfg.width; ++m) {
      if (cfg.row[m]) CHECK((m + cfg.generation) % 2 == 0);
    }
    oriented_step(cfg, rng);
  }
  CHECK_THROWS(make_oriented(7, 0.5, 1.0, 1));
  CHECK_THROWS(make_oriented(0, 0.5, 1.0, 1));
}

TEST_CASE("oriented model: inert columns never fill") {
  auto cfg = make_oriented(16, 1.0, 0.5, 12);
  Rng rng(1);
  for (int g = 0; g < 30; ++g) {
    for (std::size_t m = 0; m < cfg.width; ++m) {
      if (!cfg.site_mask[m]) CHECK(cfg.row[m] == 0);
    }
    oriented_step(cfg, rng);
  }
}

TEST_CASE("oriented step law matches exhaustive enumeration") {
  const double theta = 0.7;
  const std::vector<std::vector<std::uint8_t>> inputs{
      {1, 0, 1, 0, 1, 0, 1, 0}, {1, 0, 0, 0, 0, 0, 1, 0}, {0, 0, 1, 0, 0, 0, 0, 0}};
  for (const auto& input : inputs) {
    std::map<std::uint32_t, double> expected;
    for (std::uint32_t out = 0; out < 256; ++out) {
      double prob = 1.0;
      for (std::size_t x = 0; x < 8; ++x) {
        const bool eligible = (x > 0 && input[x - 1]) || (x + 1 < 8 && input[x + 1]);
        const bool on = (out >> x) & 1u;
        prob *= eligible ? (on ? theta : 1.0 - theta) : (on ? 0.0 : 1.0);
      }
      if (prob > 0.0) expected[out] = prob;
    }
    std::map<std::uint32_t, std::size_t> observed;
    Rng rng(31);
    const int trials = 40000;
    for (int t = 0; t < trials; ++t) {
      auto cfg = make_oriented(8, theta, 1.0, 0);
      cfg.row = input;
      oriented_step(cfg, rng);
      std::uint32_t bits = 0;
      for (std::size_t x = 0; x < 8; ++x) bits |= static_cast<std::uint32_t>(cfg.row[x] != 0) << x;
      ++observed[bits];
    }
    const auto chi = harness::chi_square_gof(observed, expected);
    CHECK(chi.p_value > 0.001);
  }
}
