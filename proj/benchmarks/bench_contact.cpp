#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

#include "dilcp/cpsim/contact.hpp"
#include "dilcp/graphgen/graph.hpp"

namespace {

using namespace dilcp;

void BM_RunContactPath(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto base = std::make_shared<const graphgen::Graph>(graphgen::gen_path(n));
  const auto dg = graphgen::dilute_sites(base, 0.7, 11);
  const std::vector<double> schedule{1.0, 10.0, 100.0};
  std::uint64_t seed = 1;
  std::uint64_t events = 0;
  for (auto _ : state) {
    const auto traj = cpsim::run_contact(dg, 2.0, 100.0, schedule, seed++);
    events += traj.events;
    benchmark::DoNotOptimize(traj.extinction_time);
  }
  state.counters["events/s"] = benchmark::Counter(static_cast<double>(events), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_RunContactPath)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_RunContactErdosRenyi(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto base = std::make_shared<const graphgen::Graph>(graphgen::gen_erdos_renyi(n, 3.0, 5));
  const auto dg = graphgen::dilute_bonds(base, 0.5, 6);
  const std::vector<double> schedule{1.0, 10.0};
  std::uint64_t seed = 1;
  std::uint64_t events = 0;
  for (auto _ : state) {
    const auto traj = cpsim::run_contact(dg, 1.5, 10.0, schedule, seed++);
    events += traj.events;
  }
  state.counters["events/s"] = benchmark::Counter(static_cast<double>(events), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_RunContactErdosRenyi)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace
