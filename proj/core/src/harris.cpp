#include <fmt/format.h>

#include "dilcp/cpsim/contact.hpp"
#include "dilcp/error.hpp"

namespace dilcp::cpsim {

std::vector<std::vector<std::vector<std::uint8_t>>> harris_coupled_run(
    const DilutedGraph& dg, double lambda, std::span<const std::vector<Vertex>> initial_states,
    std::span<const double> schedule, std::uint64_t seed) {
  if (!(lambda > 0.0)) throw ParameterError(fmt::format("lambda must be positive, got {}", lambda));
  const auto& g = dg.base();
  const std::size_t n = g.vertex_count();

  // Directed birth arrows x -> y from birth-capable x along kept edges.
  std::vector<std::pair<Vertex, Vertex>> arrows;
  for (graphgen::EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!dg.edge_kept(e)) continue;
    const auto [u, v] = g.edge(e);
    if (dg.birth_capable(u)) arrows.emplace_back(u, v);
    if (dg.birth_capable(v)) arrows.emplace_back(v, u);
  }

  std::vector<std::vector<std::uint8_t>> state;
  for (const auto& init : initial_states) {
    std::vector<std::uint8_t> occ(n, 0);
    for (auto v : init) {
      if (v >= n) throw ParameterError(fmt::format("initial vertex {} out of range", v));
      occ[v] = 1;
    }
    state.push_back(std::move(occ));
  }

  std::vector<std::vector<std::vector<std::uint8_t>>> out(state.size());
  const double death_rate = static_cast<double>(n);
  const double total = death_rate + lambda * static_cast<double>(arrows.size());
  Rng rng(seed);
  double t = 0.0;
  for (double s : schedule) {
    while (total > 0.0) {
      const double next = t + rng.exponential(total);
      if (next > s) {
        // Memorylessness lets the clock restart at s.
        t = s;
        break;
      }
      t = next;
      if (rng.uniform() * total < death_rate) {
        const auto v = rng.below(n);
        for (auto& occ : state) occ[v] = 0;
      } else {
        const auto [x, y] = arrows[rng.below(arrows.size())];
        for (auto& occ : state) {
          if (occ[x]) occ[y] = 1;
        }
      }
    }
    for (std::size_t i = 0; i < state.size(); ++i) out[i].push_back(state[i]);
  }
  return out;
}

}  // namespace dilcp::cpsim
