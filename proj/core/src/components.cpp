#include <algorithm>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "dilcp/error.hpp"
#include "dilcp/percolate/percolate.hpp"
#include "union_find.hpp"

namespace dilcp::percolate {

std::size_t ClusterReport::total_vertices() const noexcept {
  std::size_t total = 0;
  for (auto s : component_sizes) total += s;
  return total;
}

ClusterReport components(const DilutedGraph& dg) {
  const auto& g = dg.base();
  detail::UnionFind uf(g.vertex_count());
  for (graphgen::EdgeId e = 0; e < g.edge_count(); ++e) {
    if (dg.edge_effective(e)) uf.unite(g.edge(e).u, g.edge(e).v);
  }
  ClusterReport report;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (dg.vertex_effective(v) && uf.find(v) == v) report.component_sizes.push_back(uf.size_of(v));
  }
  std::sort(report.component_sizes.begin(), report.component_sizes.end(), std::greater<>());
  report.n_components = report.component_sizes.size();
  report.largest = report.component_sizes.empty() ? 0 : report.component_sizes.front();
  return report;
}

std::map<std::size_t, double> cluster_size_histogram(std::span<const ClusterReport> reports,
                                                     SizeWeighting weighting) {
  if (reports.empty()) throw SizeError("cluster_size_histogram needs at least one report");
  std::map<std::size_t, double> pmf;
  double total = 0.0;
  for (const auto& report : reports) {
    for (auto s : report.component_sizes) {
      const double w = weighting == SizeWeighting::by_vertex ? static_cast<double>(s) : 1.0;
      pmf[s] += w;
      total += w;
    }
  }
  if (total == 0.0) throw SizeError("cluster_size_histogram: reports contain no components");
  for (auto& [size, mass] : pmf) mass /= total;
  return pmf;
}

std::size_t max_active_run(const DilutedGraph& dg) {
  if (dg.base().kind().family != graphgen::GraphFamily::path1d) {
    throw KindError("max_active_run needs a path1d graph");
  }
  if (dg.mode() != graphgen::DilutionMode::site) {
    throw KindError("max_active_run needs site dilution");
  }
  std::size_t best = 0;
  std::size_t run = 0;
  for (auto flag : dg.active_mask()) {
    run = flag ? run + 1 : 0;
    best = std::max(best, run);
  }
  return best;
}

void write_cluster_csv(std::ostream& os, const ClusterReport& report) {
  std::map<std::size_t, std::size_t> counts;
  for (auto s : report.component_sizes) ++counts[s];
  os << "size,count\n";
  for (const auto& [size, count] : counts) fmt::print(os, "{},{}\n", size, count);
}

void write_path_csv(std::ostream& os, const Path& path) {
  os << "order,vertex\n";
  for (std::size_t i = 0; i < path.vertices.size(); ++i) fmt::print(os, "{},{}\n", i, path.vertices[i]);
}

}  // namespace dilcp::percolate
