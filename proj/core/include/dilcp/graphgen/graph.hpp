#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dilcp::graphgen {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
  Vertex u;
  Vertex v;

  friend bool operator==(const Edge&, const Edge&) = default;
};

enum class GraphFamily { path1d, lattice2d, erdos_renyi, custom };

/// Family tag plus the parameters needed to interpret vertex indices.
/// Lattices are row-major: vertex (x, y) has index x + width * y.
struct GraphKind {
  GraphFamily family = GraphFamily::custom;
  std::size_t width = 0;   // lattice2d only
  std::size_t height = 0;  // lattice2d only
  double mu = 0.0;         // erdos_renyi only

  /// Text tag: path1d, lattice2d(L), lattice2d(WxH), erdos_renyi(mu), custom.
  std::string tag() const;
  static GraphKind parse(std::string_view tag);

  bool is_lattice() const noexcept { return family == GraphFamily::lattice2d; }
};

/// Immutable undirected simple graph with CSR adjacency.
class Graph {
 public:
  /// Validates the edge list (no self-loops, no duplicates, endpoints < n).
  Graph(std::size_t n, std::vector<Edge> edges, GraphKind kind = {});

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  /// Edge ids parallel to neighbors(v).
  std::span<const EdgeId> incident_edges(Vertex v) const noexcept {
    return {incident_.data() + offsets_[v], incident_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  /// Concatenated neighbour lists; neighbors(v) starts at adjacency_offset(v).
  std::span<const Vertex> adjacency() const noexcept { return adjacency_; }
  std::size_t adjacency_offset(Vertex v) const noexcept { return offsets_[v]; }

  const GraphKind& kind() const noexcept { return kind_; }

  Vertex lattice_vertex(std::size_t x, std::size_t y) const;
  std::pair<std::size_t, std::size_t> lattice_coords(Vertex v) const;

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> adjacency_;
  std::vector<EdgeId> incident_;
  GraphKind kind_;
};

using GraphPtr = std::shared_ptr<const Graph>;

enum class DilutionMode { bond, site };

std::string_view to_string(DilutionMode mode) noexcept;

/// A base graph together with a dilution mask. Bond mode keeps one flag per
/// edge; site mode keeps one active flag per vertex. Inert vertices stay in
/// the graph: they can be occupied and die but never give birth.
class DilutedGraph {
 public:
  /// Builds from an explicit mask; mask length must match the mode.
  DilutedGraph(GraphPtr base, DilutionMode mode, std::vector<std::uint8_t> mask,
               double keep_prob = 1.0, std::uint64_t seed = 0);

  const Graph& base() const noexcept { return *base_; }
  const GraphPtr& base_ptr() const noexcept { return base_; }
  DilutionMode mode() const noexcept { return mode_; }
  double keep_prob() const noexcept { return keep_prob_; }
  std::uint64_t seed() const noexcept { return seed_; }

  /// Empty unless mode() == bond.
  std::span<const std::uint8_t> bond_mask() const noexcept { return bond_mask_; }
  /// Empty unless mode() == site.
  std::span<const std::uint8_t> active_mask() const noexcept { return active_mask_; }

  std::size_t vertex_count() const noexcept { return base_->vertex_count(); }

  bool edge_kept(EdgeId e) const noexcept {
    return mode_ == DilutionMode::site || bond_mask_[e] != 0;
  }
  bool birth_capable(Vertex v) const noexcept {
    return mode_ == DilutionMode::bond || active_mask_[v] != 0;
  }
  /// Vertices that count for structural statistics: all of them in bond mode,
  /// the active ones in site mode.
  bool vertex_effective(Vertex v) const noexcept { return birth_capable(v); }
  /// Edge usable for structural connectivity: kept and, in site mode, joining
  /// two active vertices.
  bool edge_effective(EdgeId e) const noexcept;

  std::size_t kept_edge_count() const noexcept;
  std::size_t effective_vertex_count() const noexcept;

 private:
  GraphPtr base_;
  DilutionMode mode_;
  double keep_prob_;
  std::uint64_t seed_;
  std::vector<std::uint8_t> bond_mask_;
  std::vector<std::uint8_t> active_mask_;
};

Graph gen_path(std::size_t n);
Graph gen_lattice2d(std::size_t side);
/// width x height vertices; gen_lattice2d(L) == gen_lattice_rect(L, L).
Graph gen_lattice_rect(std::size_t width, std::size_t height);
/// Each of the n(n-1)/2 pairs is an edge with probability mu/n.
Graph gen_erdos_renyi(std::size_t n, double mu, std::uint64_t seed);
/// Vertex set of the rectangle [0, n+1] x [0, n], the primal box of the
/// crossing duality: (n + 2) x (n + 1) vertices.
Graph gen_crossing_box(std::size_t n);

/// Keeps edge e iff keyed_uniform(seed, e) < p.
DilutedGraph dilute_bonds(GraphPtr g, double p, std::uint64_t seed);
/// Vertex v is active iff keyed_uniform(seed, v) < p.
DilutedGraph dilute_sites(GraphPtr g, double p, std::uint64_t seed);
/// Bond mode with every edge kept.
DilutedGraph undiluted(GraphPtr g);

/// Subgraph on effective vertices and effective edges, with the map back to
/// original indices. This is the "inert sites removed" reading of site
/// dilution.
struct Subgraph {
  Graph graph;
  std::vector<Vertex> original;
};
Subgraph restrict_to_effective(const DilutedGraph& dg);

/// Edge-list text format: header `n <count> kind <tag>`, then `u v` per line.
void write_edge_list(std::ostream& os, const Graph& g);
Graph read_edge_list(std::istream& is);

/// Mask text format: header `mask <bond|site> <count> p <p> seed <seed>`,
/// then one 0/1 flag per line in index order.
void write_mask(std::ostream& os, const DilutedGraph& dg);
DilutedGraph read_mask(std::istream& is, GraphPtr base);

}  // namespace dilcp::graphgen
