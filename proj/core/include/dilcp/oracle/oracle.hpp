#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dilcp/graphgen/graph.hpp"
#include "dilcp/percolate/percolate.hpp"

namespace dilcp::oracle {

using graphgen::DilutedGraph;

inline constexpr std::size_t kMaxCtmcVertices = 12;
/// Largest size solved by dense elimination; larger systems use Gauss-Seidel.
inline constexpr std::size_t kDenseCtmcVertices = 8;
inline constexpr std::size_t kMaxCrossingEdges = 24;
inline constexpr std::size_t kMaxOrientedWidth = 16;

/// Mean absorption times m(S) of the contact process for every occupancy
/// bitmask S (bit v set iff vertex v occupied), from the hitting-time system
/// r(S) m(S) - sum_{S'} rate(S -> S') m(S') = 1, m(empty) = 0. Every vertex
/// of the base graph takes part, inert ones included. Throws SizeError past
/// kMaxCtmcVertices vertices.
std::vector<double> mean_extinction_table(const DilutedGraph& dg, double lambda);

/// m(all occupied).
double exact_mean_extinction(const DilutedGraph& dg, double lambda);

/// Number of open-edge configurations with a crossing, indexed by the count
/// of open edges among the enumerated ones. Only edges that can affect the
/// event are enumerated: for left_right, every horizontal edge and the
/// vertical edges of interior columns (top_bottom symmetric).
struct CrossingPolynomial {
  std::size_t edges = 0;
  std::vector<std::uint64_t> crossing_counts;

  double evaluate(double p) const;
};

/// The box is width x height lattice units, (width + 1) x (height + 1)
/// vertices, with every enumerated edge open with probability p.
CrossingPolynomial crossing_polynomial(std::size_t width, std::size_t height,
                                       percolate::Orientation orientation = percolate::Orientation::left_right);

/// Sum over configurations of p^open (1 - p)^closed times the crossing
/// indicator. Throws SizeError past kMaxCrossingEdges enumerated edges.
double exact_crossing_prob(std::size_t width, std::size_t height, double p,
                           percolate::Orientation orientation = percolate::Orientation::left_right);

/// Exact law of the next row of the oriented model: bit x of the key is
/// column x. Sites with an occupied neighbour in `row` and an active column
/// are occupied independently with probability theta. An empty mask means
/// every column is active. Zero-probability rows are omitted.
std::map<std::uint32_t, double> oriented_next_row_dist(std::span<const std::uint8_t> row, double theta,
                                                       std::span<const std::uint8_t> mask = {});

/// Row as a bitmask with bit x for column x.
std::uint32_t row_bits(std::span<const std::uint8_t> row);

/// One oracle table row: named parameters and the exact value.
struct OracleRow {
  std::vector<std::pair<std::string, double>> params;
  double exact_value = 0.0;
};

/// CSV with header `<param names...>,exact_value`, taken from the first row.
void write_oracle_csv(std::ostream& os, std::span<const OracleRow> rows);

}  // namespace dilcp::oracle
