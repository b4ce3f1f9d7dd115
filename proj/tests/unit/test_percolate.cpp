#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <random>
#include <sstream>

#include "dilcp/error.hpp"
#include "dilcp/graphgen/graph.hpp"
#include "dilcp/percolate/percolate.hpp"
#include "dilcp/theory/theory.hpp"

using namespace dilcp;
using namespace dilcp::graphgen;
using namespace dilcp::percolate;

namespace {

GraphPtr share(Graph g) { return std::make_shared<const Graph>(std::move(g)); }

DilutedGraph with_bonds(GraphPtr g, std::vector<std::uint8_t> mask) {
  return DilutedGraph(std::move(g), DilutionMode::bond, std::move(mask));
}

DilutedGraph random_small_graph(std::mt19937_64& gen, std::size_t n) {
  std::bernoulli_distribution coin(0.45);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (coin(gen)) edges.push_back({u, v});
    }
  }
  return undiluted(share(Graph(n, std::move(edges))));
}

// Brute-force longest simple path by plain recursion.
std::size_t brute_longest(const DilutedGraph& dg) {
  const auto& g = dg.base();
  std::vector<char> used(g.vertex_count(), 0);
  std::size_t best = 0;
  std::function<void(Vertex, std::size_t)> go = [&](Vertex v, std::size_t len) {
    best = std::max(best, len);
    const auto nbrs = g.neighbors(v);
    const auto ids = g.incident_edges(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (!used[nbrs[i]] && dg.edge_effective(ids[i])) {
        used[nbrs[i]] = 1;
        go(nbrs[i], len + 1);
        used[nbrs[i]] = 0;
      }
    }
  };
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (!dg.vertex_effective(v)) continue;
    used[v] = 1;
    go(v, 0);
    used[v] = 0;
  }
  return best;
}

// Flood fill over kept lattice bonds inside rect from the source side.
bool brute_crossing(const DilutedGraph& dg, const Rect& r, Orientation o) {
  const auto& g = dg.base();
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<Vertex> stack;
  auto inside = [&](Vertex v) {
    const auto [x, y] = g.lattice_coords(v);
    return x >= r.x0 && x <= r.x1 && y >= r.y0 && y <= r.y1;
  };
  if (o == Orientation::left_right) {
    for (auto y = r.y0; y <= r.y1; ++y) stack.push_back(g.lattice_vertex(r.x0, y));
  } else {
    for (auto x = r.x0; x <= r.x1; ++x) stack.push_back(g.lattice_vertex(x, r.y0));
  }
  for (auto v : stack) seen[v] = 1;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    const auto [x, y] = g.lattice_coords(v);
    if ((o == Orientation::left_right ? x : y) == (o == Orientation::left_right ? r.x1 : r.y1)) return true;
    const auto nbrs = g.neighbors(v);
    const auto ids = g.incident_edges(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (!seen[nbrs[i]] && dg.edge_kept(ids[i]) && inside(nbrs[i])) {
        seen[nbrs[i]] = 1;
        stack.push_back(nbrs[i]);
      }
    }
  }
  return false;
}

bool path_in_rect(const DilutedGraph& dg, const Path& p, const Rect& r) {
  return std::all_of(p.vertices.begin(), p.vertices.end(), [&](Vertex v) {
    const auto [x, y] = dg.base().lattice_coords(v);
    return x >= r.x0 && x <= r.x1 && y >= r.y0 && y <= r.y1;
  });
}

}  // namespace

TEST_CASE("components on small paths") {
  const auto g = share(gen_path(5));
  const auto all = components(undiluted(g));
  CHECK(all.component_sizes == std::vector<std::size_t>{5});
  CHECK(all.largest == 5);
  CHECK(all.n_components == 1);
  const auto cut = components(with_bonds(g, {1, 1, 0, 1}));
  CHECK(cut.component_sizes == std::vector<std::size_t>{3, 2});
  CHECK(cut.total_vertices() == 5);

  const DilutedGraph site(g, DilutionMode::site, {1, 1, 0, 1, 1});
  const auto sr = components(site);
  CHECK(sr.component_sizes == std::vector<std::size_t>{2, 2});
}

TEST_CASE("components agree with a breadth-first oracle") {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = share(gen_erdos_renyi(200, 1.5, 100 + trial));
    const auto dg = trial % 2 ? dilute_bonds(g, 0.7, trial) : dilute_sites(g, 0.7, trial);
    std::vector<char> seen(200, 0);
    std::vector<std::size_t> sizes;
    for (Vertex s = 0; s < 200; ++s) {
      if (seen[s] || !dg.vertex_effective(s)) continue;
      std::vector<Vertex> q{s};
      seen[s] = 1;
      for (std::size_t i = 0; i < q.size(); ++i) {
        const auto nbrs = g->neighbors(q[i]);
        const auto ids = g->incident_edges(q[i]);
        for (std::size_t k = 0; k < nbrs.size(); ++k) {
          if (!seen[nbrs[k]] && dg.edge_effective(ids[k])) {
            seen[nbrs[k]] = 1;
            q.push_back(nbrs[k]);
          }
        }
      }
      sizes.push_back(q.size());
    }
    std::sort(sizes.rbegin(), sizes.rend());
    CHECK(components(dg).component_sizes == sizes);
  }
}

TEST_CASE("subcritical ER at p = 0.2 has no large component") {
  const std::size_t n = 100000;
  const double predicted = theory::largest_cluster_asymptotic(n, 0.6);
  const double alpha = theory::alpha_nu(0.6);
  CHECK(predicted == doctest::Approx((std::log(1e5) - 2.5 * std::log(std::log(1e5))) / alpha));
  // The largest cluster fluctuates like a Gumbel variable with scale 1/alpha;
  // its 95% quantile sits about 3/alpha above the location.
  const double bound = predicted + 3.0 / alpha;
  int within = 0;
  const int seeds = 20;
  for (int s = 0; s < seeds; ++s) {
    const auto g = share(gen_erdos_renyi(n, 3.0, 40 + s));
    if (components(dilute_bonds(g, 0.2, 70 + s)).largest <= bound) ++within;
  }
  CHECK(within >= 19);
}

TEST_CASE("cluster_size_histogram") {
  ClusterReport r;
  r.component_sizes = {2, 1, 1};
  const auto pmf = cluster_size_histogram(std::span<const ClusterReport>(&r, 1));
  REQUIRE(pmf.size() == 2);
  CHECK(pmf.at(1) == doctest::Approx(2.0 / 3.0));
  CHECK(pmf.at(2) == doctest::Approx(1.0 / 3.0));
  const auto by_vertex = cluster_size_histogram(std::span<const ClusterReport>(&r, 1), SizeWeighting::by_vertex);
  CHECK(by_vertex.at(1) == doctest::Approx(0.5));
  CHECK(by_vertex.at(2) == doctest::Approx(0.5));

  const auto isolated = components(with_bonds(share(gen_path(6)), {0, 0, 0, 0, 0}));
  const auto one = cluster_size_histogram(std::span<const ClusterReport>(&isolated, 1));
  CHECK(one.size() == 1);
  CHECK(one.at(1) == doctest::Approx(1.0));
  CHECK_THROWS_AS(cluster_size_histogram({}), SizeError);
}

TEST_CASE("max_active_run") {
  const auto g = share(gen_path(8));
  CHECK(max_active_run(DilutedGraph(g, DilutionMode::site, {1, 0, 1, 1, 1, 0, 1, 1})) == 3);
  CHECK(max_active_run(dilute_sites(g, 0.0, 1)) == 0);
  CHECK(max_active_run(dilute_sites(g, 1.0, 1)) == 8);
  CHECK_THROWS_AS(max_active_run(undiluted(g)), KindError);
  CHECK_THROWS_AS(max_active_run(dilute_sites(share(gen_lattice2d(3)), 0.5, 1)), KindError);
}

TEST_CASE("max_active_run on 1e6 sites tracks log N / log(1/p)") {
  const auto g = share(gen_path(1000000));
  double total = 0.0;
  for (int s = 0; s < 20; ++s) total += static_cast<double>(max_active_run(dilute_sites(g, 0.5, 300 + s)));
  const double ratio = total / 20 / std::log(1e6);
  CHECK(ratio >= 1.23);
  CHECK(ratio <= 1.66);
}

TEST_CASE("max_active_run matches the maximum of geometric interval lengths") {
  // Independent construction: lay down alternating active runs of length
  // geometric(1 - p) (support 0, 1, ...) and inert single sites until N sites
  // are filled, then compare the mean maximum with the masked path's.
  const std::size_t n = 2000;
  const double p = 0.6;
  const int trials = 400;
  std::mt19937_64 gen(5);
  std::geometric_distribution<int> geo(1.0 - p);
  double direct_sum = 0.0;
  double direct_sq = 0.0;
  double masked_sum = 0.0;
  double masked_sq = 0.0;
  const auto g = share(gen_path(n));
  for (int t = 0; t < trials; ++t) {
    std::size_t filled = 0;
    std::size_t best = 0;
    while (filled < n) {
      const std::size_t run = std::min<std::size_t>(geo(gen), n - filled);
      best = std::max(best, run);
      filled += run + 1;
    }
    direct_sum += best;
    direct_sq += static_cast<double>(best) * best;
    const double m = static_cast<double>(max_active_run(dilute_sites(g, p, 1000 + t)));
    masked_sum += m;
    masked_sq += m * m;
  }
  const double m1 = direct_sum / trials;
  const double m2 = masked_sum / trials;
  const double v1 = direct_sq / trials - m1 * m1;
  const double v2 = masked_sq / trials - m2 * m2;
  CHECK(std::abs(m1 - m2) <= 4.0 * std::sqrt((v1 + v2) / trials));
}

TEST_CASE("longest_path_exact examples and limits") {
  CHECK(longest_path_exact(undiluted(share(Graph(3, {{0, 1}, {1, 2}, {0, 2}})))) == 2);
  CHECK(longest_path_exact(undiluted(share(gen_path(7)))) == 6);
  CHECK(longest_path_exact(undiluted(share(Graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}})))) == 2);
  CHECK(longest_path_exact(undiluted(share(gen_path(1)))) == 0);
  CHECK(longest_path_exact(undiluted(share(gen_path(20)))) == 19);
  CHECK_THROWS_AS(longest_path_exact(undiluted(share(gen_path(21)))), SizeError);
  // Only effective vertices count toward the cap.
  const auto site = dilute_sites(share(gen_path(40)), 0.3, 2);
  if (site.effective_vertex_count() <= kExactPathLimit) CHECK_NOTHROW(longest_path_exact(site));
}

TEST_CASE("longest_path_exact agrees with brute force") {
  std::mt19937_64 gen(23);
  for (int t = 0; t < 60; ++t) {
    const auto dg = random_small_graph(gen, 3 + t % 7);
    CHECK(longest_path_exact(dg) == brute_longest(dg));
  }
  for (int t = 0; t < 20; ++t) {
    const auto dg = dilute_sites(share(gen_lattice2d(3)), 0.7, t);
    CHECK(longest_path_exact(dg) == brute_longest(dg));
  }
}

TEST_CASE("longest_path_dfs is a valid lower bound") {
  std::mt19937_64 gen(29);
  for (int t = 0; t < 100; ++t) {
    const auto dg = random_small_graph(gen, 4 + t % 12);
    const auto path = longest_path_dfs(dg, 8, t);
    CHECK(is_valid_path(dg, path));
    CHECK(path.length() <= longest_path_exact(dg));
  }
  const auto line = undiluted(share(gen_path(50)));
  CHECK(longest_path_dfs(line, 4, 1).length() == 49);
  const auto a = longest_path_dfs(line, 3, 9);
  const auto b = longest_path_dfs(line, 3, 9);
  CHECK(a.vertices == b.vertices);
}

TEST_CASE("longest_path_dfs finds a linear path in supercritical ER") {
  const std::size_t n = 100000;
  const auto dg = undiluted(share(gen_erdos_renyi(n, 1.5, 77)));
  const auto path = longest_path_dfs(dg, 4, 3);
  CHECK(is_valid_path(dg, path));
  CHECK(path.length() >= n / 100);
}

TEST_CASE("is_valid_path rejects bad paths") {
  const auto dg = with_bonds(share(gen_path(5)), {1, 0, 1, 1});
  CHECK(is_valid_path(dg, Path{{2, 3, 4}}));
  CHECK_FALSE(is_valid_path(dg, Path{{0, 1, 2}}));
  CHECK_FALSE(is_valid_path(dg, Path{{2, 3, 2}}));
  CHECK_FALSE(is_valid_path(dg, Path{{0, 2}}));
}

TEST_CASE("expected path counts") {
  CHECK(expected_path_count(10, 2, 0.5) == doctest::Approx(4.5));
  CHECK(expected_path_count(10, 1, 0.5) == doctest::Approx(10.0));
  double direct = 1.0;
  for (int i = 0; i < 5; ++i) direct *= (30.0 - i);
  direct *= std::pow(0.7 / 30.0, 4);
  CHECK(expected_path_count(30, 5, 0.7) == doctest::Approx(direct));
  CHECK_THROWS_AS(expected_path_count(5, 6, 0.5), DomainError);
  const double k1 = path_count_unit_root(1e5, 0.5);
  CHECK(std::abs(log_expected_path_count(1e5, k1, 0.5)) < 1e-6);
  CHECK(k1 == doctest::Approx(std::log(1e5) / std::log(2.0)).epsilon(0.1));
}

TEST_CASE("crossings: extremes, errors and brute-force agreement") {
  const auto g = share(gen_lattice2d(6));
  const auto full = dilute_bonds(g, 1.0, 1);
  const auto none = dilute_bonds(g, 0.0, 1);
  CHECK(has_crossing(full, full_rect(full), Orientation::left_right));
  CHECK(has_crossing(full, full_rect(full), Orientation::top_bottom));
  CHECK_FALSE(has_crossing(none, full_rect(none), Orientation::left_right));
  CHECK_FALSE(has_crossing(none, {1, 3, 0, 2}, Orientation::top_bottom));
  CHECK_THROWS_AS(has_crossing(full, {3, 1, 0, 2}, Orientation::left_right), ParameterError);
  CHECK_THROWS_AS(has_crossing(full, {0, 6, 0, 2}, Orientation::left_right), ParameterError);
  CHECK_THROWS_AS(has_crossing(undiluted(share(gen_path(4))), {0, 1, 0, 0}, Orientation::left_right),
                  KindError);

  const Rect r{1, 4, 0, 3};
  for (std::uint64_t s = 0; s < 300; ++s) {
    const auto dg = dilute_bonds(g, 0.5, s);
    for (auto o : {Orientation::left_right, Orientation::top_bottom}) {
      const bool expect = brute_crossing(dg, r, o);
      CHECK(has_crossing(dg, r, o) == expect);
      const auto path = find_crossing(dg, r, o, s % 2 ? SeedOrder::descending : SeedOrder::ascending);
      CHECK(path.has_value() == expect);
      if (path) {
        CHECK(is_valid_path(dg, *path));
        CHECK(path_in_rect(dg, *path, r));
        const auto [xa, ya] = g->lattice_coords(path->vertices.front());
        const auto [xb, yb] = g->lattice_coords(path->vertices.back());
        if (o == Orientation::left_right) {
          CHECK(xa == r.x0);
          CHECK(xb == r.x1);
        } else {
          CHECK(ya == r.y0);
          CHECK(yb == r.y1);
        }
      }
    }
  }
}

TEST_CASE("crossing probability of the duality box at p = 1/2") {
  const auto g = share(gen_crossing_box(8));
  const int seeds = 20000;
  int hits = 0;
  for (int s = 0; s < seeds; ++s) {
    const auto dg = dilute_bonds(g, 0.5, s);
    hits += has_crossing(dg, full_rect(dg), Orientation::left_right);
  }
  CHECK(std::abs(static_cast<double>(hits) / seeds - 0.5) <= 0.02);
}

TEST_CASE("dual_config") {
  const auto g = share(gen_crossing_box(8));
  const auto all = dilute_bonds(g, 1.0, 0);
  const auto dual = dual_config(all);
  CHECK(dual.base().kind().width == 9);
  CHECK(dual.base().kind().height == 10);
  const auto mask = dual.bond_mask();
  // Every dual edge crossing a primal edge is closed; the 2n pairing edges
  // complement the primal's non-crossing edges, which are also all open.
  CHECK(std::count(mask.begin(), mask.end(), 0) == static_cast<long>(mask.size()));

  for (std::uint64_t s = 0; s < 500; ++s) {
    const auto dg = dilute_bonds(g, 0.5, s);
    const auto back = dual_config(dual_config(dg));
    CHECK(std::equal(dg.bond_mask().begin(), dg.bond_mask().end(), back.bond_mask().begin(),
                     back.bond_mask().end()));
    const auto d = dual_config(dg);
    CHECK(has_crossing(dg, full_rect(dg), Orientation::left_right) !=
          has_crossing(d, full_rect(d), Orientation::top_bottom));
  }
  CHECK_THROWS_AS(dual_config(dilute_bonds(share(gen_lattice2d(5)), 0.5, 1)), KindError);
  CHECK_THROWS_AS(dual_config(dilute_sites(g, 0.5, 1)), KindError);
}

TEST_CASE("stitch_paths") {
  const Path single{{4, 5, 6}};
  CHECK(stitch_paths(std::span<const Path>(&single, 1)).vertices == single.vertices);

  // A left-right crossing of row 2 and a bottom-to-top crossing of column 3
  // on a 6 x 6 lattice share vertex (3, 2).
  const auto g = share(gen_lattice2d(6));
  const auto dg = dilute_bonds(g, 1.0, 0);
  Path lr;
  Path tb;
  for (std::size_t x = 0; x < 6; ++x) lr.vertices.push_back(g->lattice_vertex(x, 2));
  for (std::size_t y = 0; y < 6; ++y) tb.vertices.push_back(g->lattice_vertex(3, y));
  const std::vector<Path> pair{lr, tb};
  const auto joined = stitch_paths(pair);
  CHECK(is_valid_path(dg, joined));
  CHECK(joined.length() >= 5);
  CHECK(joined.vertices.front() == g->lattice_vertex(0, 2));

  const std::vector<Path> apart{Path{{0, 1}}, Path{{7, 8}}};
  CHECK_THROWS_AS(stitch_paths(apart), ParameterError);
}

TEST_CASE("stitched crossings are always valid on random supercritical configurations") {
  const auto g = share(gen_lattice2d(12));
  const Rect h{0, 11, 3, 7};
  const Rect v{4, 9, 0, 11};
  int stitched = 0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const auto dg = dilute_bonds(g, 0.7, s);
    const auto a = find_crossing(dg, h, Orientation::left_right);
    const auto b = find_crossing(dg, v, Orientation::top_bottom);
    if (!a || !b) continue;
    const bool share_vertex = std::any_of(a->vertices.begin(), a->vertices.end(), [&](Vertex x) {
      return std::find(b->vertices.begin(), b->vertices.end(), x) != b->vertices.end();
    });
    REQUIRE(share_vertex);
    const std::vector<Path> pair{*a, *b};
    const auto joined = stitch_paths(pair);
    CHECK(is_valid_path(dg, joined));
    CHECK(joined.length() >= std::max(a->length(), b->length()));
    ++stitched;
  }
  CHECK(stitched > 500);
}

TEST_CASE("staircase_long_path") {
  const auto g = share(gen_lattice2d(20));
  // floor(C ln 20) = 9 gives two strips.
  const double c = 9.5 / std::log(20.0);
  CHECK(staircase_strip_height(20, c) == 9);
  const auto full = dilute_bonds(g, 1.0, 0);
  const auto path = staircase_long_path(full, c);
  REQUIRE(path.has_value());
  CHECK(is_valid_path(full, *path));
  CHECK(path->length() >= 2 * 19);
  CHECK_FALSE(staircase_long_path(dilute_bonds(g, 0.0, 0), c).has_value());
  CHECK_THROWS_AS(staircase_strip_height(20, 0.1), ParameterError);

  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto dg = dilute_bonds(g, 0.8, s);
    if (auto p = staircase_long_path(dg, c)) CHECK(is_valid_path(dg, *p));
  }
}

TEST_CASE("structural statistics are monotone in p under coupled masks") {
  const auto er = share(gen_erdos_renyi(400, 3.0, 8));
  const auto line = share(gen_path(400));
  const auto box = share(gen_lattice2d(10));
  for (std::uint64_t s = 0; s < 20; ++s) {
    std::size_t prev_largest = 0;
    std::size_t prev_run = 0;
    bool prev_cross = false;
    for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const auto largest = components(dilute_bonds(er, p, s)).largest;
      const auto run = max_active_run(dilute_sites(line, p, s));
      const auto bx = dilute_bonds(box, p, s);
      const bool cross = has_crossing(bx, full_rect(bx), Orientation::left_right);
      CHECK(largest >= prev_largest);
      CHECK(run >= prev_run);
      CHECK((cross || !prev_cross));
      prev_largest = largest;
      prev_run = run;
      prev_cross = cross;
    }
  }
  // The exact longest path is monotone; DFS is monotone for a fixed
  // configuration only through the exact value it bounds.
  std::mt19937_64 gen(3);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto small = share(gen_erdos_renyi(12, 4.0, s));
    std::size_t prev = 0;
    for (double p : {0.2, 0.5, 0.8, 1.0}) {
      const auto len = longest_path_exact(dilute_bonds(small, p, s + 50));
      CHECK(len >= prev);
      prev = len;
    }
  }
}

TEST_CASE("crossing gamma calibration") {
  const std::vector<std::size_t> heights{1, 2, 3, 4};
  const auto cal = estimate_crossing_gamma(0.7, 40, heights, 400, 1);
  CHECK(cal.gamma > 0.0);
  CHECK(cal.failure_rates.size() == heights.size());
  for (std::size_t i = 1; i < cal.failure_rates.size(); ++i) {
    CHECK(cal.failure_rates[i] <= cal.failure_rates[i - 1] + 0.05);
  }
  CHECK_THROWS_AS(estimate_crossing_gamma(0.7, 40, std::vector<std::size_t>{2}, 10, 1), SizeError);
}

TEST_CASE("cluster and path CSV") {
  ClusterReport r;
  r.component_sizes = {3, 1, 1};
  std::ostringstream os;
  write_cluster_csv(os, r);
  CHECK(os.str() == "size,count\n1,2\n3,1\n");
  std::ostringstream ps;
  write_path_csv(ps, Path{{4, 2}});
  CHECK(ps.str() == "order,vertex\n0,4\n1,2\n");
}
