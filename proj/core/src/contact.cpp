#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "dilcp/cpsim/contact.hpp"
#include "dilcp/error.hpp"
#include "dilcp/parallel.hpp"

namespace dilcp::cpsim {

ContactProcess::ContactProcess(const DilutedGraph& dg, double lambda, std::uint64_t seed,
                               std::optional<std::span<const Vertex>> initial)
    : dg_(dg), lambda_(lambda), rng_(seed) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw ParameterError(fmt::format("lambda must be a finite nonnegative rate, got {}", lambda));
  }
  const auto& g = dg.base();
  const std::size_t n = g.vertex_count();
  kept_off_.assign(n + 1, 0);
  for (Vertex v = 0; v < n; ++v) {
    std::size_t kept = 0;
    for (auto e : g.incident_edges(v)) kept += dg.edge_kept(e);
    kept_off_[v + 1] = kept_off_[v] + kept;
    max_kept_degree_ = std::max(max_kept_degree_, kept);
  }
  kept_adj_.resize(kept_off_[n]);
  for (Vertex v = 0; v < n; ++v) {
    const auto nbrs = g.neighbors(v);
    const auto ids = g.incident_edges(v);
    std::size_t at = kept_off_[v];
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (dg.edge_kept(ids[i])) kept_adj_[at++] = nbrs[i];
    }
  }

  position_.assign(n, kAbsent);
  capable_position_.assign(n, kAbsent);
  if (initial) {
    for (auto v : *initial) {
      if (v >= n) throw ParameterError(fmt::format("initial vertex {} out of range", v));
      if (!is_occupied(v)) occupy(v);
    }
  } else {
    occupied_.reserve(n);
    for (Vertex v = 0; v < n; ++v) occupy(v);
  }
}

void ContactProcess::occupy(Vertex v) {
  position_[v] = static_cast<std::uint32_t>(occupied_.size());
  occupied_.push_back(v);
  for (auto w : kept_neighbors(v)) {
    if (is_occupied(w)) {
      if (dg_.birth_capable(w)) --candidates_;
    } else if (dg_.birth_capable(v)) {
      ++candidates_;
    }
  }
  if (dg_.birth_capable(v)) {
    capable_position_[v] = static_cast<std::uint32_t>(capable_.size());
    capable_.push_back(v);
  }
}

void ContactProcess::vacate(Vertex v) {
  const auto at = position_[v];
  occupied_[at] = occupied_.back();
  position_[occupied_[at]] = at;
  occupied_.pop_back();
  position_[v] = kAbsent;
  for (auto w : kept_neighbors(v)) {
    if (is_occupied(w)) {
      if (dg_.birth_capable(w)) ++candidates_;
    } else if (dg_.birth_capable(v)) {
      --candidates_;
    }
  }
  if (dg_.birth_capable(v)) {
    const auto cat = capable_position_[v];
    capable_[cat] = capable_.back();
    capable_position_[capable_[cat]] = cat;
    capable_.pop_back();
    capable_position_[v] = kAbsent;
  }
}

double ContactProcess::next_event_time() {
  const double rate = total_death_rate() + total_birth_rate();
  if (rate <= 0.0) return pending_time_ = std::numeric_limits<double>::infinity();
  return pending_time_ = time_ + rng_.exponential(rate);
}

void ContactProcess::apply_event() {
  const double death = total_death_rate();
  const double total = death + total_birth_rate();
  time_ = pending_time_;
  ++events_;
  if (rng_.uniform() * total < death) {
    vacate(occupied_[rng_.below(occupied_.size())]);
  } else {
    const double cap = static_cast<double>(max_kept_degree_);
    while (true) {
      const Vertex x = capable_[rng_.below(capable_.size())];
      const auto nbrs = kept_neighbors(x);
      if (nbrs.empty() || rng_.uniform() * cap >= static_cast<double>(nbrs.size())) continue;
      const Vertex y = nbrs[rng_.below(nbrs.size())];
      if (is_occupied(y)) continue;
      occupy(y);
      break;
    }
  }
}

void ContactProcess::audit() const {
  std::uint64_t candidates = 0;
  std::size_t occupied = 0;
  for (Vertex v = 0; v < position_.size(); ++v) {
    if (!is_occupied(v)) continue;
    ++occupied;
    if (!dg_.birth_capable(v)) continue;
    for (auto w : kept_neighbors(v)) candidates += !is_occupied(w);
  }
  if (occupied != occupied_.size() || candidates != candidates_) {
    throw NumericalError(fmt::format(
        "rate audit failed after {} events: death rate {} (cached {}), birth pairs {} (cached {})", events_,
        occupied, occupied_.size(), candidates, candidates_));
  }
}

Trajectory run_contact(const DilutedGraph& dg, double lambda, double t_max, std::span<const double> schedule,
                       std::uint64_t seed, const ContactOptions& options) {
  if (!(lambda > 0.0)) throw ParameterError(fmt::format("lambda must be positive, got {}", lambda));
  if (!(t_max >= 0.0)) throw ParameterError(fmt::format("t_max must be nonnegative, got {}", t_max));
  if (!std::is_sorted(schedule.begin(), schedule.end())) throw ParameterError("schedule must be sorted");

  std::optional<std::span<const Vertex>> initial;
  if (options.initial) initial = std::span<const Vertex>(*options.initial);
  ContactProcess cp(dg, lambda, seed, initial);

  Trajectory traj;
  traj.seed = seed;
  traj.lambda = lambda;
  traj.graph_hash = graph_hash(dg);
  std::size_t next_sample = 0;
  auto record_until = [&](double t, bool inclusive) {
    while (next_sample < schedule.size() &&
           (schedule[next_sample] < t || (inclusive && schedule[next_sample] == t))) {
      traj.samples.push_back({schedule[next_sample++], cp.occupied_count()});
    }
  };

  while (cp.occupied_count() > 0) {
    const double t = cp.next_event_time();
    if (t > t_max) {
      record_until(t_max, true);
      traj.extinction_time = t_max;
      traj.censored = true;
      traj.events = cp.events();
      return traj;
    }
    record_until(t, false);
    cp.apply_event();
    if (options.audit_interval && cp.events() % options.audit_interval == 0) cp.audit();
  }
  traj.extinction_time = cp.time();
  traj.samples.push_back({cp.time(), 0});
  traj.events = cp.events();
  return traj;
}

std::vector<SurvivalRecord> survival_times(const DilutedGraph& dg, double lambda, std::size_t reps, double t_max,
                                           std::uint64_t seed) {
  if (reps == 0) throw ParameterError("survival_times needs reps >= 1");
  std::vector<SurvivalRecord> out(reps);
  parallel_for(reps, [&](std::size_t i) {
    const auto traj = run_contact(dg, lambda, t_max, {}, seed + i);
    out[i] = {traj.extinction_time, traj.censored};
  });
  return out;
}

std::vector<std::size_t> counts_on(const Trajectory& traj, std::span<const double> schedule) {
  std::vector<std::size_t> counts;
  counts.reserve(schedule.size());
  std::size_t j = 0;
  std::size_t last = traj.samples.empty() ? 0 : traj.samples.front().count;
  for (double s : schedule) {
    while (j < traj.samples.size() && traj.samples[j].time < s) last = traj.samples[j++].count;
    if (j < traj.samples.size() && traj.samples[j].time == s) {
      last = traj.samples[j].count;
    } else if (!traj.censored && s >= traj.extinction_time) {
      last = 0;
    }
    counts.push_back(last);
  }
  return counts;
}

std::vector<std::pair<double, double>> density(const Trajectory& traj, std::size_t n_vertices) {
  if (n_vertices == 0) throw ParameterError("density needs n_vertices > 0");
  std::vector<std::pair<double, double>> out;
  out.reserve(traj.samples.size());
  for (const auto& s : traj.samples) {
    out.emplace_back(s.time, static_cast<double>(s.count) / static_cast<double>(n_vertices));
  }
  return out;
}

std::uint64_t graph_hash(const DilutedGraph& dg) {
  const auto& g = dg.base();
  std::uint64_t h = splitmix64(g.vertex_count());
  for (const auto& e : g.edges()) h = keyed_hash(h, (std::uint64_t{e.u} << 32) | e.v);
  h = keyed_hash(h, dg.mode() == graphgen::DilutionMode::bond ? 1 : 2);
  const auto mask = dg.mode() == graphgen::DilutionMode::bond ? dg.bond_mask() : dg.active_mask();
  for (std::size_t i = 0; i < mask.size(); i += 64) {
    std::uint64_t word = 0;
    for (std::size_t j = i; j < std::min(mask.size(), i + 64); ++j) word |= std::uint64_t{mask[j] != 0} << (j - i);
    h = keyed_hash(h, word);
  }
  return h;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  fmt::print(os, "# seed={} lambda={} graph={:016x}\n", traj.seed, traj.lambda, traj.graph_hash);
  os << "time,count\n";
  for (const auto& s : traj.samples) fmt::print(os, "{},{}\n", s.time, s.count);
}

void write_extinction_csv(std::ostream& os, std::span<const SurvivalRecord> records) {
  os << "replicate,extinction_time,censored\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    fmt::print(os, "{},{},{}\n", i, records[i].time, records[i].censored ? 1 : 0);
  }
}

}  // namespace dilcp::cpsim
