#include <fmt/format.h>

#include "dilcp/cpsim/oriented.hpp"
#include "dilcp/error.hpp"

namespace dilcp::cpsim {

std::size_t OrientedConfig::occupied_count() const noexcept {
  std::size_t count = 0;
  for (auto flag : row) count += flag != 0;
  return count;
}

OrientedConfig make_oriented(std::size_t width, double theta, double site_keep_p, std::uint64_t seed) {
  if (width == 0 || width % 2 != 0) throw ParameterError(fmt::format("width must be even and positive, got {}", width));
  if (!(theta >= 0.0 && theta <= 1.0)) throw ParameterError(fmt::format("theta must lie in [0, 1], got {}", theta));
  if (!(site_keep_p >= 0.0 && site_keep_p <= 1.0)) {
    throw ParameterError(fmt::format("site_keep_p must lie in [0, 1], got {}", site_keep_p));
  }
  OrientedConfig config;
  config.width = width;
  config.theta = theta;
  config.site_mask.resize(width);
  config.row.assign(width, 0);
  for (std::size_t m = 0; m < width; ++m) {
    config.site_mask[m] = keyed_uniform(seed, m) < site_keep_p ? 1 : 0;
    config.row[m] = (m % 2 == 0 && config.site_mask[m]) ? 1 : 0;
  }
  return config;
}

void oriented_step(OrientedConfig& config, Rng& rng) {
  const std::size_t w = config.width;
  std::vector<std::uint8_t> next(w, 0);
  for (std::size_t x = 0; x < w; ++x) {
    const bool left = x > 0 && config.row[x - 1];
    const bool right = x + 1 < w && config.row[x + 1];
    if ((left || right) && config.site_mask[x]) next[x] = rng.bernoulli(config.theta) ? 1 : 0;
  }
  config.row = std::move(next);
  ++config.generation;
}

Trajectory run_oriented(std::size_t width, double theta, double site_keep_p, std::size_t t_max_generations,
                        std::uint64_t seed) {
  auto config = make_oriented(width, theta, site_keep_p, seed);
  Rng rng(seed);
  Trajectory traj;
  traj.seed = seed;
  traj.lambda = theta;
  traj.samples.push_back({0.0, config.occupied_count()});
  while (config.occupied_count() > 0) {
    if (config.generation == t_max_generations) {
      traj.extinction_time = static_cast<double>(t_max_generations);
      traj.censored = true;
      return traj;
    }
    oriented_step(config, rng);
    ++traj.events;
    traj.samples.push_back({static_cast<double>(config.generation), config.occupied_count()});
  }
  traj.extinction_time = static_cast<double>(config.generation);
  return traj;
}

}  // namespace dilcp::cpsim
