#include <benchmark/benchmark.h>

#include <memory>

#include "dilcp/graphgen/graph.hpp"
#include "dilcp/percolate/percolate.hpp"

namespace {

using namespace dilcp;

void BM_Components(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto base = std::make_shared<const graphgen::Graph>(graphgen::gen_erdos_renyi(n, 3.0, 21));
  const auto dg = graphgen::dilute_bonds(base, 1.0 / 3.0, 22);
  for (auto _ : state) {
    auto report = percolate::components(dg);
    benchmark::DoNotOptimize(report);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_Components)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_LongestPathDfs(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto base = std::make_shared<const graphgen::Graph>(graphgen::gen_erdos_renyi(n, 3.0, 31));
  const auto dg = graphgen::dilute_bonds(base, 1.0 / 3.0, 32);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    const auto path = percolate::longest_path_dfs(dg, 4, seed++);
    benchmark::DoNotOptimize(path.length());
  }
}
BENCHMARK(BM_LongestPathDfs)->Arg(10000)->Arg(30000)->Unit(benchmark::kMillisecond);

void BM_CrossingSearch(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  auto base = std::make_shared<const graphgen::Graph>(graphgen::gen_lattice2d(side));
  const auto dg = graphgen::dilute_bonds(base, 0.5, 41);
  const auto rect = percolate::full_rect(dg);
  for (auto _ : state) {
    auto path = percolate::find_crossing(dg, rect, percolate::Orientation::left_right);
    benchmark::DoNotOptimize(path);
  }
}
BENCHMARK(BM_CrossingSearch)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace
