#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "dilcp/error.hpp"
#include "dilcp/percolate/percolate.hpp"
#include "dilcp/random.hpp"

namespace dilcp::percolate {

using graphgen::Graph;

bool is_valid_path(const DilutedGraph& dg, const Path& path) {
  const auto& g = dg.base();
  std::vector<std::uint8_t> seen(g.vertex_count(), 0);
  for (std::size_t i = 0; i < path.vertices.size(); ++i) {
    const Vertex v = path.vertices[i];
    if (v >= g.vertex_count() || seen[v] || !dg.vertex_effective(v)) return false;
    seen[v] = 1;
    if (i == 0) continue;
    const Vertex u = path.vertices[i - 1];
    const auto nbrs = g.neighbors(u);
    const auto ids = g.incident_edges(u);
    bool joined = false;
    for (std::size_t j = 0; j < nbrs.size() && !joined; ++j) {
      joined = nbrs[j] == v && dg.edge_effective(ids[j]);
    }
    if (!joined) return false;
  }
  return true;
}

namespace {

// Longest simple path inside one connected component given as adjacency
// bitmasks. reach[mask] holds the set of end vertices of simple paths that
// visit exactly `mask`.
std::size_t longest_in_component(const std::vector<std::uint32_t>& adj) {
  const std::size_t m = adj.size();
  if (m <= 1) return 0;
  std::vector<std::uint32_t> reach(std::size_t{1} << m, 0);
  for (std::size_t v = 0; v < m; ++v) reach[std::size_t{1} << v] = 1u << v;
  int best = 0;
  const std::uint32_t full = static_cast<std::uint32_t>((std::uint64_t{1} << m) - 1);
  for (std::uint32_t mask = 1; mask <= full && mask != 0; ++mask) {
    std::uint32_t ends = reach[mask];
    if (!ends) continue;
    best = std::max(best, std::popcount(mask) - 1);
    if (best == static_cast<int>(m) - 1) break;
    while (ends) {
      const int v = std::countr_zero(ends);
      ends &= ends - 1;
      std::uint32_t next = adj[v] & ~mask;
      while (next) {
        const int w = std::countr_zero(next);
        next &= next - 1;
        reach[mask | (1u << w)] |= 1u << w;
      }
    }
  }
  return static_cast<std::size_t>(best);
}

}  // namespace

std::size_t longest_path_exact(const DilutedGraph& dg) {
  const auto sub = graphgen::restrict_to_effective(dg);
  const auto& g = sub.graph;
  if (g.vertex_count() > kExactPathLimit) {
    throw SizeError(fmt::format("longest_path_exact supports at most {} effective vertices, got {}",
                                kExactPathLimit, g.vertex_count()));
  }
  // Split by component; isolated vertices contribute nothing.
  std::vector<int> comp(g.vertex_count(), -1);
  std::size_t best = 0;
  for (Vertex root = 0; root < g.vertex_count(); ++root) {
    if (comp[root] >= 0 || g.degree(root) == 0) continue;
    std::vector<Vertex> members{root};
    comp[root] = static_cast<int>(root);
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (auto w : g.neighbors(members[i])) {
        if (comp[w] < 0) {
          comp[w] = static_cast<int>(root);
          members.push_back(w);
        }
      }
    }
    if (members.size() - 1 <= best) continue;
    std::vector<std::uint32_t> local(g.vertex_count(), 0);
    for (std::size_t i = 0; i < members.size(); ++i) local[members[i]] = static_cast<std::uint32_t>(i);
    std::vector<std::uint32_t> adj(members.size(), 0);
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (auto w : g.neighbors(members[i])) adj[i] |= 1u << local[w];
    }
    best = std::max(best, longest_in_component(adj));
  }
  return best;
}

namespace {

// Iterative DFS over a CSR adjacency with per-restart neighbour order.
class DfsEngine {
 public:
  DfsEngine(const Graph& g, std::vector<Vertex> adjacency)
      : g_(g),
        adjacency_(std::move(adjacency)),
        cursor_(g.vertex_count(), 0),
        parent_(g.vertex_count(), 0),
        depth_(g.vertex_count(), 0),
        stamp_(g.vertex_count(), 0) {}

  // Explores the component of root, marking it with `token`. Returns the
  // deepest vertex of the DFS tree.
  Vertex explore(Vertex root, std::uint32_t token, std::vector<Vertex>* members) {
    stack_.clear();
    stamp_[root] = token;
    depth_[root] = 0;
    parent_[root] = root;
    cursor_[root] = offset(root);
    stack_.push_back(root);
    Vertex deepest = root;
    if (members) members->push_back(root);
    while (!stack_.empty()) {
      const Vertex v = stack_.back();
      if (cursor_[v] == offset(v + 1)) {
        stack_.pop_back();
        continue;
      }
      const Vertex w = adjacency_[cursor_[v]++];
      if (stamp_[w] == token) continue;
      stamp_[w] = token;
      parent_[w] = v;
      depth_[w] = depth_[v] + 1;
      cursor_[w] = offset(w);
      if (depth_[w] > depth_[deepest]) deepest = w;
      if (members) members->push_back(w);
      stack_.push_back(w);
    }
    return deepest;
  }

  std::uint32_t depth(Vertex v) const { return depth_[v]; }
  void mark(Vertex v, std::uint32_t token) { stamp_[v] = token; }

  std::vector<Vertex> tree_path(Vertex leaf) const {
    std::vector<Vertex> path{leaf};
    while (parent_[path.back()] != path.back()) path.push_back(parent_[path.back()]);
    return path;
  }

  bool stamped(Vertex v, std::uint32_t token) const { return stamp_[v] == token; }

 private:
  std::size_t offset(Vertex v) const {
    return v == g_.vertex_count() ? adjacency_.size() : g_.adjacency_offset(v);
  }

  const Graph& g_;
  std::vector<Vertex> adjacency_;
  std::vector<std::size_t> cursor_;
  std::vector<Vertex> parent_;
  std::vector<std::uint32_t> depth_;
  std::vector<std::uint32_t> stamp_;
  std::vector<Vertex> stack_;
};

}  // namespace

Path longest_path_dfs(const DilutedGraph& dg, std::size_t restarts, std::uint64_t seed) {
  const auto sub = graphgen::restrict_to_effective(dg);
  const auto& g = sub.graph;
  Path best;
  if (g.vertex_count() == 0) return best;
  best.vertices = {sub.original.front()};
  if (g.edge_count() == 0) return best;

  const std::vector<Vertex> base_adjacency(g.adjacency().begin(), g.adjacency().end());
  std::vector<Vertex> order(g.vertex_count());
  std::uint32_t token = 0;
  restarts = std::max<std::size_t>(restarts, 1);

  for (std::size_t r = 0; r < restarts; ++r) {
    Rng rng(keyed_hash(seed, r));
    auto adjacency = base_adjacency;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      const auto begin = adjacency.begin() + static_cast<std::ptrdiff_t>(g.adjacency_offset(v));
      std::shuffle(begin, begin + static_cast<std::ptrdiff_t>(g.degree(v)), rng.engine());
    }
    std::iota(order.begin(), order.end(), Vertex{0});
    std::shuffle(order.begin(), order.end(), rng.engine());

    DfsEngine engine(g, std::move(adjacency));
    const std::uint32_t first_pass = ++token;
    std::vector<Vertex> members;
    for (auto root : order) {
      if (engine.stamped(root, first_pass) || g.degree(root) == 0) continue;
      members.clear();
      const Vertex leaf = engine.explore(root, first_pass, &members);
      if (members.size() <= best.vertices.size()) continue;
      auto consider = [&](Vertex end) {
        if (engine.depth(end) + 1 <= best.vertices.size()) return;
        best.vertices.clear();
        for (auto v : engine.tree_path(end)) best.vertices.push_back(sub.original[v]);
      };
      consider(leaf);
      // Second sweep rooted at the deepest leaf of the first tree.
      consider(engine.explore(leaf, ++token, nullptr));
      for (auto v : members) engine.mark(v, first_pass);
    }
  }
  return best;
}

double log_expected_path_count(double n, double k, double nu) {
  if (!(nu > 0)) throw DomainError("path count needs nu > 0");
  if (!(k >= 1 && k <= n)) throw DomainError(fmt::format("path count needs 1 <= k <= n, got k = {}", k));
  return std::lgamma(n + 1) - std::lgamma(n - k + 1) + (k - 1) * (std::log(nu) - std::log(n));
}

double expected_path_count(std::size_t n, std::size_t k, double nu) {
  if (k == 0 || k > n) throw DomainError(fmt::format("path count needs 1 <= k <= n, got k = {}", k));
  if (!(nu > 0)) throw DomainError("path count needs nu > 0");
  const double log_ratio = std::log(nu) - std::log(static_cast<double>(n));
  double log_count = std::log(static_cast<double>(n));
  for (std::size_t i = 1; i < k; ++i) log_count += std::log(static_cast<double>(n - i)) + log_ratio;
  return std::exp(log_count);
}

double path_count_unit_root(double n, double nu) {
  if (!(nu > 0 && nu < 1)) throw DomainError("path_count_unit_root needs 0 < nu < 1");
  double lo = 1.0;
  double hi = n;
  if (log_expected_path_count(n, hi, nu) > 0) throw NumericalError("no unit root below k = n");
  for (int it = 0; it < 200 && hi - lo > 1e-12 * n; ++it) {
    const double mid = 0.5 * (lo + hi);
    (log_expected_path_count(n, mid, nu) > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace dilcp::percolate
