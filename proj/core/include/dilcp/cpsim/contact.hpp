#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "dilcp/graphgen/graph.hpp"
#include "dilcp/random.hpp"

namespace dilcp::cpsim {

using graphgen::DilutedGraph;
using graphgen::Vertex;

struct Sample {
  double time = 0.0;
  std::size_t count = 0;
};

/// Occupied counts at schedule times plus the extinction event. When
/// censored, extinction_time holds t_max and no zero sample is appended.
struct Trajectory {
  std::vector<Sample> samples;
  double extinction_time = 0.0;
  bool censored = false;
  std::uint64_t seed = 0;
  double lambda = 0.0;
  std::uint64_t graph_hash = 0;
  std::uint64_t events = 0;
};

#ifdef NDEBUG
inline constexpr std::uint64_t kDefaultAuditInterval = 0;
#else
inline constexpr std::uint64_t kDefaultAuditInterval = 100000;
#endif

struct ContactOptions {
  /// Starting occupied set; all vertices when absent.
  std::optional<std::vector<Vertex>> initial;
  /// Run audit() every this many events (0 disables).
  std::uint64_t audit_interval = kDefaultAuditInterval;
};

/// Exact continuous-time contact process. Deaths at rate 1 per occupied
/// vertex; each birth-capable occupied x sends births along each kept edge
/// to an empty neighbour at rate lambda.
///
/// Birth events are drawn by rejection: a uniform birth-capable occupied
/// vertex x is accepted with probability deg(x)/maxdeg, then a uniform kept
/// neighbour y is accepted if empty. Every candidate pair is thus equally
/// likely.
class ContactProcess {
 public:
  ContactProcess(const DilutedGraph& dg, double lambda, std::uint64_t seed,
                 std::optional<std::span<const Vertex>> initial = std::nullopt);

  /// Time of the next event given the current rates; infinity when empty.
  double next_event_time();
  /// Advances to the time drawn by the last next_event_time() call and
  /// applies an event there.
  void apply_event();

  double time() const noexcept { return time_; }
  std::size_t occupied_count() const noexcept { return occupied_.size(); }
  bool is_occupied(Vertex v) const noexcept { return position_[v] != kAbsent; }
  std::uint64_t events() const noexcept { return events_; }

  double total_death_rate() const noexcept { return static_cast<double>(occupied_.size()); }
  double total_birth_rate() const noexcept { return lambda_ * static_cast<double>(candidates_); }
  /// Count of (occupied birth-capable x, empty y, kept edge xy) pairs.
  std::uint64_t birth_candidates() const noexcept { return candidates_; }

  /// Recomputes both rates from the occupied set; throws NumericalError on
  /// any mismatch with the cached values.
  void audit() const;

 private:
  static constexpr std::uint32_t kAbsent = 0xFFFFFFFFu;

  void occupy(Vertex v);
  void vacate(Vertex v);
  std::span<const Vertex> kept_neighbors(Vertex v) const noexcept {
    return {kept_adj_.data() + kept_off_[v], kept_adj_.data() + kept_off_[v + 1]};
  }

  const DilutedGraph& dg_;
  double lambda_;
  Rng rng_;
  double time_ = 0.0;
  double pending_time_ = 0.0;
  std::uint64_t events_ = 0;

  std::vector<std::size_t> kept_off_;
  std::vector<Vertex> kept_adj_;
  std::size_t max_kept_degree_ = 0;

  std::vector<Vertex> occupied_;
  std::vector<std::uint32_t> position_;
  std::vector<Vertex> capable_;
  std::vector<std::uint32_t> capable_position_;
  std::uint64_t candidates_ = 0;
};

/// Runs from the options' initial set until extinction or t_max. samples
/// holds, for each schedule time s before the extinction time (and s <=
/// t_max), the count just before s; an uncensored run ends with the sample
/// (extinction_time, 0). schedule must be sorted.
Trajectory run_contact(const DilutedGraph& dg, double lambda, double t_max, std::span<const double> schedule,
                       std::uint64_t seed, const ContactOptions& options = {});

struct SurvivalRecord {
  double time = 0.0;
  bool censored = false;
};

/// Replicate i runs with seed + i. Replicates run on default_workers()
/// threads; the output order is the replicate order.
std::vector<SurvivalRecord> survival_times(const DilutedGraph& dg, double lambda, std::size_t reps, double t_max,
                                           std::uint64_t seed);

/// Counts at each schedule time: recorded samples, zero after extinction.
/// Times past a censored end are reported as the last known count.
std::vector<std::size_t> counts_on(const Trajectory& traj, std::span<const double> schedule);

/// samples with count divided by n_vertices.
std::vector<std::pair<double, double>> density(const Trajectory& traj, std::size_t n_vertices);

/// Stable 64-bit identity of the base graph and dilution mask.
std::uint64_t graph_hash(const DilutedGraph& dg);

/// `# seed=<s> lambda=<l> graph=<hash>` then `time,count` rows.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
/// `replicate,extinction_time,censored`.
void write_extinction_csv(std::ostream& os, std::span<const SurvivalRecord> records);

/// Graphical (Harris) construction: several initial states driven by one
/// shared stream of death marks and birth arrows. Returns, for each initial
/// state, the occupancy vector at each schedule time.
std::vector<std::vector<std::vector<std::uint8_t>>> harris_coupled_run(
    const DilutedGraph& dg, double lambda, std::span<const std::vector<Vertex>> initial_states,
    std::span<const double> schedule, std::uint64_t seed);

}  // namespace dilcp::cpsim
