#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <ostream>

#include <Eigen/Dense>
#include <Eigen/SparseLU>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "dilcp/error.hpp"
#include "dilcp/oracle/oracle.hpp"
#include "union_find.hpp"

namespace dilcp::oracle {

namespace {

// Transition structure of the contact-process CTMC on occupancy bitmasks.
struct Ctmc {
  std::size_t n = 0;
  double lambda = 0.0;
  std::vector<std::uint32_t> kept_nbrs;  // bitmask of kept neighbours
  std::vector<bool> capable;

  // Calls visit(target, rate) for each transition out of s, returns the total rate.
  template <class Visit>
  double transitions(std::uint32_t s, Visit&& visit) const {
    double total = 0.0;
    for (std::uint32_t rest = s; rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      visit(s & ~(1u << v), 1.0);
      total += 1.0;
    }
    if (lambda == 0.0) return total;
    // Birth rate into each empty y is lambda times its capable occupied neighbours.
    for (std::uint32_t empty = ~s & ((1u << n) - 1); empty; empty &= empty - 1) {
      const int y = std::countr_zero(empty);
      int sources = 0;
      for (std::uint32_t nb = kept_nbrs[y] & s; nb; nb &= nb - 1) sources += capable[std::countr_zero(nb)];
      if (sources == 0) continue;
      const double rate = lambda * sources;
      visit(s | (1u << y), rate);
      total += rate;
    }
    return total;
  }
};

Ctmc build_ctmc(const DilutedGraph& dg, double lambda) {
  const auto& g = dg.base();
  if (g.vertex_count() > kMaxCtmcVertices) {
    throw SizeError(fmt::format("exact CTMC oracle supports at most {} vertices, got {}", kMaxCtmcVertices,
                                g.vertex_count()));
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw ParameterError(fmt::format("lambda must be finite and nonnegative, got {}", lambda));
  }
  Ctmc c;
  c.n = g.vertex_count();
  c.lambda = lambda;
  c.kept_nbrs.assign(c.n, 0);
  c.capable.resize(c.n);
  for (graphgen::EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!dg.edge_kept(e)) continue;
    const auto [u, v] = g.edge(e);
    c.kept_nbrs[u] |= 1u << v;
    c.kept_nbrs[v] |= 1u << u;
  }
  for (graphgen::Vertex v = 0; v < c.n; ++v) c.capable[v] = dg.birth_capable(v);
  return c;
}

std::vector<double> solve_dense(const Ctmc& c) {
  const std::size_t states = (std::size_t{1} << c.n) - 1;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(states), static_cast<Eigen::Index>(states));
  Eigen::VectorXd rhs = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(states));
  for (std::uint32_t s = 1; s <= states; ++s) {
    const auto row = static_cast<Eigen::Index>(s - 1);
    a(row, row) = c.transitions(s, [&](std::uint32_t t, double rate) {
      if (t != 0) a(row, static_cast<Eigen::Index>(t - 1)) -= rate;
    });
  }
  const Eigen::VectorXd m = a.partialPivLu().solve(rhs);
  std::vector<double> out(states + 1, 0.0);
  for (std::size_t s = 1; s <= states; ++s) out[s] = m(static_cast<Eigen::Index>(s - 1));
  return out;
}

std::vector<double> solve_sparse(const Ctmc& c) {
  const std::size_t states = (std::size_t{1} << c.n) - 1;
  std::vector<Eigen::Triplet<double>> entries;
  for (std::uint32_t s = 1; s <= states; ++s) {
    const int row = static_cast<int>(s - 1);
    const double total = c.transitions(s, [&](std::uint32_t t, double rate) {
      if (t != 0) entries.emplace_back(row, static_cast<int>(t - 1), -rate);
    });
    entries.emplace_back(row, row, total);
  }
  Eigen::SparseMatrix<double> a(static_cast<Eigen::Index>(states), static_cast<Eigen::Index>(states));
  a.setFromTriplets(entries.begin(), entries.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success) throw NumericalError("CTMC oracle: sparse LU factorization failed");
  const Eigen::VectorXd m = lu.solve(Eigen::VectorXd::Ones(static_cast<Eigen::Index>(states)));
  if (lu.info() != Eigen::Success) throw NumericalError("CTMC oracle: sparse LU solve failed");
  std::vector<double> out(states + 1, 0.0);
  for (std::size_t s = 1; s <= states; ++s) out[s] = m(static_cast<Eigen::Index>(s - 1));
  return out;
}

// Gauss-Seidel in reverse popcount order. Stops when the extrapolated error
// delta * rho / (1 - rho) falls below tol relative to max m; returns false
// when the sweep cap is hit first.
bool solve_gauss_seidel(const Ctmc& c, std::vector<double>& m, double tol, std::size_t max_sweeps) {
  const std::size_t states = std::size_t{1} << c.n;
  std::vector<std::uint32_t> order(states - 1);
  std::iota(order.begin(), order.end(), 1u);
  std::stable_sort(order.begin(), order.end(),
                   [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) > std::popcount(b); });
  m.assign(states, 0.0);
  double previous_delta = 0.0;
  for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
    double delta = 0.0;
    double scale = 0.0;
    for (auto s : order) {
      double acc = 1.0;
      const double total = c.transitions(s, [&](std::uint32_t t, double rate) { acc += rate * m[t]; });
      const double updated = acc / total;
      delta = std::max(delta, std::abs(updated - m[s]));
      scale = std::max(scale, std::abs(updated));
      m[s] = updated;
    }
    if (sweep > 1 && previous_delta > 0.0) {
      const double rho = delta / previous_delta;
      if (rho < 1.0 && delta * rho / (1.0 - rho) <= tol * scale && delta <= tol * scale) return true;
    }
    if (delta == 0.0) return true;
    previous_delta = delta;
  }
  return false;
}

}  // namespace

std::vector<double> mean_extinction_table(const DilutedGraph& dg, double lambda) {
  const auto c = build_ctmc(dg, lambda);
  if (c.n == 0) return {0.0};
  if (c.n <= kDenseCtmcVertices) return solve_dense(c);
  std::vector<double> m;
  if (solve_gauss_seidel(c, m, 1e-10, 2000)) return m;
  return solve_sparse(c);
}

double exact_mean_extinction(const DilutedGraph& dg, double lambda) {
  const auto table = mean_extinction_table(dg, lambda);
  return table.back();
}

double CrossingPolynomial::evaluate(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError(fmt::format("p must lie in [0, 1], got {}", p));
  double total = 0.0;
  for (std::size_t k = 0; k < crossing_counts.size(); ++k) {
    if (crossing_counts[k] == 0) continue;
    total += static_cast<double>(crossing_counts[k]) * std::pow(p, static_cast<double>(k)) *
             std::pow(1.0 - p, static_cast<double>(edges - k));
  }
  return total;
}

CrossingPolynomial crossing_polynomial(std::size_t width, std::size_t height, percolate::Orientation orientation) {
  if (orientation == percolate::Orientation::top_bottom) return crossing_polynomial(height, width);
  // Left-right crossing of the (width + 1) x (height + 1) vertex box.
  const std::size_t cols = width + 1;
  const std::size_t rows = height + 1;
  auto id = [cols](std::size_t x, std::size_t y) { return static_cast<std::uint32_t>(x + cols * y); };
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::size_t y = 0; y < rows; ++y) {
    for (std::size_t x = 0; x + 1 < cols; ++x) edges.emplace_back(id(x, y), id(x + 1, y));
  }
  for (std::size_t x = 1; x + 1 < cols; ++x) {
    for (std::size_t y = 0; y + 1 < rows; ++y) edges.emplace_back(id(x, y), id(x, y + 1));
  }
  if (edges.size() > kMaxCrossingEdges) {
    throw SizeError(fmt::format("exact crossing enumeration supports at most {} edges, the {}x{} box needs {}",
                                kMaxCrossingEdges, width, height, edges.size()));
  }
  CrossingPolynomial poly;
  poly.edges = edges.size();
  poly.crossing_counts.assign(edges.size() + 1, 0);
  const std::uint32_t source = static_cast<std::uint32_t>(cols * rows);
  const std::uint32_t sink = source + 1;
  const std::uint64_t configs = std::uint64_t{1} << edges.size();
  for (std::uint64_t config = 0; config < configs; ++config) {
    detail::UnionFind uf(cols * rows + 2);
    for (std::size_t y = 0; y < rows; ++y) {
      uf.unite(source, id(0, y));
      uf.unite(sink, id(cols - 1, y));
    }
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (config >> e & 1) uf.unite(edges[e].first, edges[e].second);
    }
    if (uf.find(source) == uf.find(sink)) ++poly.crossing_counts[std::popcount(config)];
  }
  return poly;
}

double exact_crossing_prob(std::size_t width, std::size_t height, double p, percolate::Orientation orientation) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError(fmt::format("p must lie in [0, 1], got {}", p));
  return crossing_polynomial(width, height, orientation).evaluate(p);
}

std::uint32_t row_bits(std::span<const std::uint8_t> row) {
  if (row.size() > 32) throw SizeError("row_bits supports at most 32 columns");
  std::uint32_t bits = 0;
  for (std::size_t x = 0; x < row.size(); ++x) bits |= static_cast<std::uint32_t>(row[x] != 0) << x;
  return bits;
}

std::map<std::uint32_t, double> oriented_next_row_dist(std::span<const std::uint8_t> row, double theta,
                                                       std::span<const std::uint8_t> mask) {
  const std::size_t w = row.size();
  if (w > kMaxOrientedWidth) {
    throw SizeError(fmt::format("oriented oracle supports width at most {}, got {}", kMaxOrientedWidth, w));
  }
  if (!mask.empty() && mask.size() != w) throw SizeError("mask width differs from row width");
  if (!(theta >= 0.0 && theta <= 1.0)) throw ParameterError(fmt::format("theta must lie in [0, 1], got {}", theta));
  std::vector<std::size_t> eligible;
  for (std::size_t x = 0; x < w; ++x) {
    const bool active = mask.empty() || mask[x];
    const bool fed = (x > 0 && row[x - 1]) || (x + 1 < w && row[x + 1]);
    if (active && fed) eligible.push_back(x);
  }
  std::map<std::uint32_t, double> dist;
  const std::uint32_t subsets = 1u << eligible.size();
  for (std::uint32_t sub = 0; sub < subsets; ++sub) {
    const int k = std::popcount(sub);
    const double prob = std::pow(theta, k) * std::pow(1.0 - theta, static_cast<int>(eligible.size()) - k);
    if (prob == 0.0) continue;
    std::uint32_t next = 0;
    for (std::size_t i = 0; i < eligible.size(); ++i) {
      if (sub >> i & 1) next |= 1u << eligible[i];
    }
    dist[next] += prob;
  }
  return dist;
}

void write_oracle_csv(std::ostream& os, std::span<const OracleRow> rows) {
  if (rows.empty()) return;
  for (const auto& [name, value] : rows.front().params) os << name << ',';
  os << "exact_value\n";
  for (const auto& row : rows) {
    for (const auto& [name, value] : row.params) fmt::print(os, "{},", value);
    fmt::print(os, "{:.12g}\n", row.exact_value);
  }
}

}  // namespace dilcp::oracle
