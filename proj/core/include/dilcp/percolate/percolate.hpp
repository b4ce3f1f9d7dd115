#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "dilcp/graphgen/graph.hpp"
#include "dilcp/regression.hpp"

namespace dilcp::percolate {

using graphgen::DilutedGraph;
using graphgen::Vertex;

/// Component sizes of the effective graph, sorted in decreasing order.
struct ClusterReport {
  std::vector<std::size_t> component_sizes;
  std::size_t largest = 0;
  std::size_t n_components = 0;

  std::size_t total_vertices() const noexcept;
};

/// Self-avoiding path; length() counts edges.
struct Path {
  std::vector<Vertex> vertices;

  std::size_t length() const noexcept { return vertices.empty() ? 0 : vertices.size() - 1; }
};

/// Union-find labelling over effective edges. Bond mode partitions every
/// vertex; site mode partitions the active vertices only.
ClusterReport components(const DilutedGraph& dg);

enum class SizeWeighting {
  by_component,  ///< fraction of components with size s
  by_vertex,     ///< fraction of vertices lying in a component of size s
};

/// Empirical PMF over component sizes pooled across reports.
std::map<std::size_t, double> cluster_size_histogram(std::span<const ClusterReport> reports,
                                                     SizeWeighting weighting = SizeWeighting::by_component);

/// Longest run of consecutive active sites of a site-diluted path.
std::size_t max_active_run(const DilutedGraph& dg);

/// True iff the vertices are distinct and consecutive ones share an effective edge.
bool is_valid_path(const DilutedGraph& dg, const Path& path);

inline constexpr std::size_t kExactPathLimit = 20;

/// Exact longest self-avoiding path length (edges) by bitmask dynamic
/// programming over simple paths. Throws SizeError past kExactPathLimit
/// effective vertices.
std::size_t longest_path_exact(const DilutedGraph& dg);

/// Best of `restarts` randomized depth-first searches. Each restart shuffles
/// the vertex and neighbour orders, takes the deepest DFS-tree leaf, then
/// re-roots a second search at that leaf inside its component. The
/// root-to-leaf tree path is always a simple path of the graph.
Path longest_path_dfs(const DilutedGraph& dg, std::size_t restarts, std::uint64_t seed);

/// log of n (n-1) ... (n-k+1) (nu/n)^(k-1), the expected number of
/// self-avoiding k-vertex paths in ER(n, nu/n). k may be real (Gamma extension).
double log_expected_path_count(double n, double k, double nu);
/// exp(log_expected_path_count) for integer k in [1, n].
double expected_path_count(std::size_t n, std::size_t k, double nu);
/// Real k >= 1 with expected_path_count == 1 (nu < 1 only).
double path_count_unit_root(double n, double nu);

/// Inclusive vertex rectangle [x0, x1] x [y0, y1] on a lattice.
struct Rect {
  std::size_t x0 = 0;
  std::size_t x1 = 0;
  std::size_t y0 = 0;
  std::size_t y1 = 0;
};

enum class Orientation { left_right, top_bottom };

/// Which end of the source side seeds the breadth-first search first. The
/// returned crossing hugs that end when several shortest crossings exist.
enum class SeedOrder { ascending, descending };

/// Whole-lattice rectangle of a lattice2d graph.
Rect full_rect(const DilutedGraph& dg);

/// True iff kept edges inside rect join column x0 to column x1 (left_right)
/// or row y0 to row y1 (top_bottom).
bool has_crossing(const DilutedGraph& dg, const Rect& rect, Orientation orientation);

/// A shortest crossing inside rect, running from x0 to x1 (left_right) or
/// from y0 to y1 (top_bottom); absent when no crossing exists.
std::optional<Path> find_crossing(const DilutedGraph& dg, const Rect& rect, Orientation orientation,
                                  SeedOrder order = SeedOrder::ascending);

/// Planar dual of a bond-diluted crossing box. The primal must be a lattice
/// whose vertex dimensions differ by one: (n+2) x (n+1) (the box
/// [0, n+1] x [0, n]) maps to its dual (n+1) x (n+2) shifted by (1/2, -1/2),
/// and that shape maps back with the opposite shift. A dual edge is open iff
/// the primal edge it crosses is closed. The 2n edges that cross nothing
/// (vertical edges on the primal's outer columns, horizontal edges on the
/// dual's outer rows) cannot affect either crossing event; they are paired
/// with each other in index order, also complemented, so the map is an
/// involution.
DilutedGraph dual_config(const DilutedGraph& dg);

/// Joins consecutive crossings: walk each path from its entry vertex to the
/// first vertex shared with the next path, then continue along the next one.
/// The walk is loop-erased so the result is self-avoiding. If that loses
/// length relative to the longest input, the longest input is returned.
/// Throws ParameterError if two consecutive paths share no vertex.
Path stitch_paths(std::span<const Path> crossings);

/// Staircase construction on an L x L bond-diluted lattice: horizontal strips
/// of height K = floor(C log L) crossed alternately left-to-right and
/// right-to-left, linked by bottom-to-top crossings of the 2K-high end boxes
/// (right end after odd strips, left end after even ones). Absent if any
/// required crossing is missing.
std::optional<Path> staircase_long_path(const DilutedGraph& dg, double strip_constant);

/// Strip height floor(C log L) used by staircase_long_path (at least 1).
std::size_t staircase_strip_height(std::size_t side, double strip_constant);

/// Empirical crossing-failure decay for strips L vertices long and K lattice
/// units high (K + 1 rows):
/// fits log(failure / L) = -gamma K + c over the given heights.
struct CrossingCalibration {
  double gamma = 0.0;
  FitResult fit;
  std::vector<std::size_t> heights;
  std::vector<double> failure_rates;
};
CrossingCalibration estimate_crossing_gamma(double p, std::size_t length,
                                            std::span<const std::size_t> heights,
                                            std::size_t trials, std::uint64_t seed);

/// CSV with header `size,count`, sizes ascending.
void write_cluster_csv(std::ostream& os, const ClusterReport& report);
/// CSV with header `order,vertex`.
void write_path_csv(std::ostream& os, const Path& path);

}  // namespace dilcp::percolate
