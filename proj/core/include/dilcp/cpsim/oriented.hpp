#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dilcp/cpsim/contact.hpp"
#include "dilcp/random.hpp"

namespace dilcp::cpsim {

/// One row of oriented site percolation on a width-W strip of the parity
/// lattice {(m, n) : m + n even}, with closed boundaries.
struct OrientedConfig {
  std::size_t width = 0;
  std::size_t generation = 0;
  /// row[m] is 1 iff (m, generation) is occupied; only sites with
  /// m + generation even may be set.
  std::vector<std::uint8_t> row;
  double theta = 0.0;
  /// Per-column active flag; an inert column is never occupiable.
  std::vector<std::uint8_t> site_mask;

  std::size_t occupied_count() const noexcept;
};

/// Generation 0 with every active parity-valid site occupied. Columns are
/// active iff keyed_uniform(seed, m) < site_keep_p.
OrientedConfig make_oriented(std::size_t width, double theta, double site_keep_p, std::uint64_t seed);

/// Advances one generation: site x of the next row is eligible if x-1 or x+1
/// is occupied now and column x is active, and each eligible site is
/// occupied independently with probability theta.
void oriented_step(OrientedConfig& config, Rng& rng);

/// Counts per generation (time = generation index) until the row empties or
/// t_max_generations is reached (censored).
Trajectory run_oriented(std::size_t width, double theta, double site_keep_p, std::size_t t_max_generations,
                        std::uint64_t seed);

}  // namespace dilcp::cpsim
