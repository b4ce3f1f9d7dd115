#include "dilcp/graphgen/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <fmt/format.h>

#include "dilcp/error.hpp"
#include "dilcp/random.hpp"

namespace dilcp::graphgen {

namespace {

std::string format_real(double x) {
  return fmt::format("{}", x);
}

double parse_real(std::string_view s) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw IoError(fmt::format("bad number '{}' in graph kind tag", s));
  }
  return value;
}

std::size_t parse_count(std::string_view s) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw IoError(fmt::format("bad integer '{}' in graph kind tag", s));
  }
  return value;
}

void check_probability(double p, std::string_view what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ParameterError(fmt::format("{} must lie in [0, 1], got {}", what, p));
  }
}

}  // namespace

std::string GraphKind::tag() const {
  switch (family) {
    case GraphFamily::path1d:
      return "path1d";
    case GraphFamily::lattice2d:
      if (width == height) return fmt::format("lattice2d({})", width);
      return fmt::format("lattice2d({}x{})", width, height);
    case GraphFamily::erdos_renyi:
      return fmt::format("erdos_renyi({})", format_real(mu));
    case GraphFamily::custom:
      break;
  }
  return "custom";
}

GraphKind GraphKind::parse(std::string_view tag) {
  GraphKind kind;
  if (tag == "path1d") {
    kind.family = GraphFamily::path1d;
    return kind;
  }
  if (tag == "custom") return kind;
  const auto open = tag.find('(');
  if (open == std::string_view::npos || tag.back() != ')') {
    throw IoError(fmt::format("unknown graph kind tag '{}'", tag));
  }
  const auto name = tag.substr(0, open);
  const auto args = tag.substr(open + 1, tag.size() - open - 2);
  if (name == "lattice2d") {
    kind.family = GraphFamily::lattice2d;
    const auto x = args.find('x');
    if (x == std::string_view::npos) {
      kind.width = kind.height = parse_count(args);
    } else {
      kind.width = parse_count(args.substr(0, x));
      kind.height = parse_count(args.substr(x + 1));
    }
  } else if (name == "erdos_renyi") {
    kind.family = GraphFamily::erdos_renyi;
    kind.mu = parse_real(args);
  } else {
    throw IoError(fmt::format("unknown graph kind tag '{}'", tag));
  }
  return kind;
}

Graph::Graph(std::size_t n, std::vector<Edge> edges, GraphKind kind)
    : n_(n), edges_(std::move(edges)), kind_(kind) {
  if (n_ > std::numeric_limits<Vertex>::max()) throw SizeError("vertex count exceeds 32-bit range");
  std::vector<std::uint64_t> keys;
  keys.reserve(edges_.size());
  for (const auto& e : edges_) {
    if (e.u >= n_ || e.v >= n_) {
      throw ParameterError(fmt::format("edge {{{}, {}}} out of range for n = {}", e.u, e.v, n_));
    }
    if (e.u == e.v) throw ParameterError(fmt::format("self-loop at vertex {}", e.u));
    const auto lo = std::min(e.u, e.v);
    const auto hi = std::max(e.u, e.v);
    keys.push_back((static_cast<std::uint64_t>(lo) << 32) | hi);
  }
  std::sort(keys.begin(), keys.end());
  if (std::adjacent_find(keys.begin(), keys.end()) != keys.end()) {
    throw ParameterError("duplicate edge in edge list");
  }

  offsets_.assign(n_ + 1, 0);
  for (const auto& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t v = 0; v < n_; ++v) offsets_[v + 1] += offsets_[v];
  adjacency_.resize(2 * edges_.size());
  incident_.resize(2 * edges_.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const auto& e = edges_[id];
    adjacency_[fill[e.u]] = e.v;
    incident_[fill[e.u]++] = id;
    adjacency_[fill[e.v]] = e.u;
    incident_[fill[e.v]++] = id;
  }
}

Vertex Graph::lattice_vertex(std::size_t x, std::size_t y) const {
  if (!kind_.is_lattice()) throw KindError("lattice_vertex on a non-lattice graph");
  if (x >= kind_.width || y >= kind_.height) {
    throw ParameterError(fmt::format("lattice site ({}, {}) outside {}", x, y, kind_.tag()));
  }
  return static_cast<Vertex>(x + kind_.width * y);
}

std::pair<std::size_t, std::size_t> Graph::lattice_coords(Vertex v) const {
  if (!kind_.is_lattice()) throw KindError("lattice_coords on a non-lattice graph");
  return {v % kind_.width, v / kind_.width};
}

std::string_view to_string(DilutionMode mode) noexcept {
  return mode == DilutionMode::bond ? "bond" : "site";
}

DilutedGraph::DilutedGraph(GraphPtr base, DilutionMode mode, std::vector<std::uint8_t> mask,
                           double keep_prob, std::uint64_t seed)
    : base_(std::move(base)), mode_(mode), keep_prob_(keep_prob), seed_(seed) {
  if (!base_) throw ParameterError("diluted graph needs a base graph");
  check_probability(keep_prob, "keep probability");
  const std::size_t expected =
      mode == DilutionMode::bond ? base_->edge_count() : base_->vertex_count();
  if (mask.size() != expected) {
    throw ParameterError(fmt::format("{} mask has {} entries, expected {}", to_string(mode),
                                     mask.size(), expected));
  }
  for (auto& flag : mask) flag = flag ? 1 : 0;
  if (mode == DilutionMode::bond) {
    bond_mask_ = std::move(mask);
  } else {
    active_mask_ = std::move(mask);
  }
}

bool DilutedGraph::edge_effective(EdgeId e) const noexcept {
  if (mode_ == DilutionMode::bond) return bond_mask_[e] != 0;
  const auto& edge = base_->edge(e);
  return active_mask_[edge.u] != 0 && active_mask_[edge.v] != 0;
}

std::size_t DilutedGraph::kept_edge_count() const noexcept {
  if (mode_ == DilutionMode::site) return base_->edge_count();
  return static_cast<std::size_t>(std::count(bond_mask_.begin(), bond_mask_.end(), 1));
}

std::size_t DilutedGraph::effective_vertex_count() const noexcept {
  if (mode_ == DilutionMode::bond) return base_->vertex_count();
  return static_cast<std::size_t>(std::count(active_mask_.begin(), active_mask_.end(), 1));
}

Graph gen_path(std::size_t n) {
  if (n == 0) throw SizeError("path needs at least one vertex");
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(i + 1)});
  }
  return Graph(n, std::move(edges), GraphKind{GraphFamily::path1d});
}

Graph gen_lattice_rect(std::size_t width, std::size_t height) {
  if (width == 0 || height == 0) throw SizeError("lattice sides must be positive");
  std::vector<Edge> edges;
  edges.reserve(2 * width * height);
  auto id = [width](std::size_t x, std::size_t y) { return static_cast<Vertex>(x + width * y); };
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      if (x + 1 < width) edges.push_back({id(x, y), id(x + 1, y)});
      if (y + 1 < height) edges.push_back({id(x, y), id(x, y + 1)});
    }
  }
  GraphKind kind{GraphFamily::lattice2d, width, height};
  return Graph(width * height, std::move(edges), kind);
}

Graph gen_lattice2d(std::size_t side) {
  if (side == 0) throw SizeError("lattice side must be positive");
  return gen_lattice_rect(side, side);
}

Graph gen_crossing_box(std::size_t n) {
  return gen_lattice_rect(n + 2, n + 1);
}

Graph gen_erdos_renyi(std::size_t n, double mu, std::uint64_t seed) {
  if (n == 0) throw SizeError("Erdos-Renyi graph needs at least one vertex");
  if (!(mu >= 0.0)) throw ParameterError(fmt::format("mean degree must be nonnegative, got {}", mu));
  const double q = mu / static_cast<double>(n);
  if (q > 1.0) {
    throw ParameterError(fmt::format("edge probability mu/n = {} exceeds 1", q));
  }
  std::vector<Edge> edges;
  GraphKind kind{GraphFamily::erdos_renyi, 0, 0, mu};
  if (q == 0.0 || n == 1) return Graph(n, std::move(edges), kind);

  if (q == 1.0) {
    edges.reserve(n * (n - 1) / 2);
    for (std::size_t v = 1; v < n; ++v)
      for (std::size_t w = 0; w < v; ++w) edges.push_back({static_cast<Vertex>(w), static_cast<Vertex>(v)});
    return Graph(n, std::move(edges), kind);
  }

  // Geometric skipping over the lower triangle (Batagelj & Brandes).
  Rng rng(seed);
  const double log_q = std::log1p(-q);
  edges.reserve(static_cast<std::size_t>(q * static_cast<double>(n) * static_cast<double>(n - 1) / 2 * 1.1) + 16);
  std::int64_t v = 1;
  std::int64_t w = -1;
  const auto nn = static_cast<std::int64_t>(n);
  while (v < nn) {
    const double r = rng.uniform();
    const double skip = std::floor(std::log1p(-r) / log_q);
    w += 1 + static_cast<std::int64_t>(std::min(skip, 9.0e15));
    while (w >= v && v < nn) {
      w -= v;
      ++v;
    }
    if (v < nn) edges.push_back({static_cast<Vertex>(w), static_cast<Vertex>(v)});
  }
  return Graph(n, std::move(edges), kind);
}

DilutedGraph dilute_bonds(GraphPtr g, double p, std::uint64_t seed) {
  check_probability(p, "bond keep probability");
  std::vector<std::uint8_t> mask(g->edge_count());
  for (std::size_t e = 0; e < mask.size(); ++e) mask[e] = keyed_uniform(seed, e) < p;
  return DilutedGraph(std::move(g), DilutionMode::bond, std::move(mask), p, seed);
}

DilutedGraph dilute_sites(GraphPtr g, double p, std::uint64_t seed) {
  check_probability(p, "site keep probability");
  std::vector<std::uint8_t> mask(g->vertex_count());
  for (std::size_t v = 0; v < mask.size(); ++v) mask[v] = keyed_uniform(seed, v) < p;
  return DilutedGraph(std::move(g), DilutionMode::site, std::move(mask), p, seed);
}

DilutedGraph undiluted(GraphPtr g) {
  std::vector<std::uint8_t> mask(g->edge_count(), 1);
  return DilutedGraph(std::move(g), DilutionMode::bond, std::move(mask), 1.0, 0);
}

Subgraph restrict_to_effective(const DilutedGraph& dg) {
  const auto& g = dg.base();
  std::vector<Vertex> original;
  std::vector<Vertex> relabel(g.vertex_count(), std::numeric_limits<Vertex>::max());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (dg.vertex_effective(v)) {
      relabel[v] = static_cast<Vertex>(original.size());
      original.push_back(v);
    }
  }
  std::vector<Edge> edges;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!dg.edge_effective(e)) continue;
    const auto& edge = g.edge(e);
    edges.push_back({relabel[edge.u], relabel[edge.v]});
  }
  return {Graph(original.size(), std::move(edges)), std::move(original)};
}

}  // namespace dilcp::graphgen
