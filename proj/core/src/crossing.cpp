#include <algorithm>
#include <limits>
#include <memory>

#include <fmt/format.h>

#include "dilcp/error.hpp"
#include "dilcp/percolate/percolate.hpp"

namespace dilcp::percolate {

using graphgen::EdgeId;
using graphgen::Graph;
using graphgen::GraphFamily;

namespace {

const graphgen::GraphKind& require_lattice(const DilutedGraph& dg, std::string_view op) {
  const auto& kind = dg.base().kind();
  if (kind.family != GraphFamily::lattice2d) {
    throw KindError(fmt::format("{} needs a lattice2d graph, got {}", op, kind.tag()));
  }
  return kind;
}

void check_rect(const graphgen::GraphKind& kind, const Rect& r) {
  if (r.x1 < r.x0 || r.y1 < r.y0) {
    throw ParameterError(fmt::format("degenerate rectangle [{}, {}] x [{}, {}]", r.x0, r.x1, r.y0, r.y1));
  }
  if (r.x1 >= kind.width || r.y1 >= kind.height) {
    throw ParameterError(fmt::format("rectangle [{}, {}] x [{}, {}] leaves {}", r.x0, r.x1, r.y0, r.y1,
                                     kind.tag()));
  }
}

EdgeId find_edge(const Graph& g, graphgen::Vertex a, graphgen::Vertex b) {
  const auto nbrs = g.neighbors(a);
  const auto ids = g.incident_edges(a);
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    if (nbrs[i] == b) return ids[i];
  }
  throw ParameterError(fmt::format("no edge between {} and {}", a, b));
}

}  // namespace

Rect full_rect(const DilutedGraph& dg) {
  const auto& kind = require_lattice(dg, "full_rect");
  return {0, kind.width - 1, 0, kind.height - 1};
}

std::optional<Path> find_crossing(const DilutedGraph& dg, const Rect& rect, Orientation orientation,
                                  SeedOrder order) {
  const auto& kind = require_lattice(dg, "find_crossing");
  check_rect(kind, rect);
  const auto& g = dg.base();
  const std::size_t w = rect.x1 - rect.x0 + 1;
  const std::size_t h = rect.y1 - rect.y0 + 1;
  const bool lr = orientation == Orientation::left_right;

  // Local indices inside the rectangle.
  auto local = [&](std::size_t x, std::size_t y) { return (x - rect.x0) + w * (y - rect.y0); };
  constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> parent(w * h, kUnseen);
  std::vector<graphgen::Vertex> queue;
  queue.reserve(w * h);

  const std::size_t side = lr ? h : w;
  for (std::size_t i = 0; i < side; ++i) {
    const std::size_t j = order == SeedOrder::ascending ? i : side - 1 - i;
    const std::size_t x = lr ? rect.x0 : rect.x0 + j;
    const std::size_t y = lr ? rect.y0 + j : rect.y0;
    const auto v = g.lattice_vertex(x, y);
    if (!dg.vertex_effective(v)) continue;
    parent[local(x, y)] = static_cast<std::uint32_t>(local(x, y));
    queue.push_back(v);
  }

  auto on_target = [&](std::size_t x, std::size_t y) { return lr ? x == rect.x1 : y == rect.y1; };
  auto to_vertex = [&](std::uint32_t l) {
    return g.lattice_vertex(rect.x0 + l % w, rect.y0 + l / w);
  };

  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto v = queue[head];
    const auto [x, y] = g.lattice_coords(v);
    if (on_target(x, y)) {
      Path path;
      std::uint32_t cur = static_cast<std::uint32_t>(local(x, y));
      while (true) {
        path.vertices.push_back(to_vertex(cur));
        if (parent[cur] == cur) break;
        cur = parent[cur];
      }
      std::reverse(path.vertices.begin(), path.vertices.end());
      return path;
    }
    const auto nbrs = g.neighbors(v);
    const auto ids = g.incident_edges(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (!dg.edge_effective(ids[i])) continue;
      const auto [nx, ny] = g.lattice_coords(nbrs[i]);
      if (nx < rect.x0 || nx > rect.x1 || ny < rect.y0 || ny > rect.y1) continue;
      auto& slot = parent[local(nx, ny)];
      if (slot != kUnseen) continue;
      slot = static_cast<std::uint32_t>(local(x, y));
      queue.push_back(nbrs[i]);
    }
  }
  return std::nullopt;
}

bool has_crossing(const DilutedGraph& dg, const Rect& rect, Orientation orientation) {
  return find_crossing(dg, rect, orientation).has_value();
}

namespace {

struct EdgeCoords {
  std::size_t ax, ay, bx, by;
};

// Pairing between the edges of the (n+2) x (n+1) box and the edges of its
// (n+1) x (n+2) dual; see dual_config.
EdgeCoords dual_partner(const EdgeCoords& e, std::size_t n) {
  const bool horizontal = e.ay == e.by;
  const std::size_t x = std::min(e.ax, e.bx);
  const std::size_t y = std::min(e.ay, e.by);
  if (horizontal) return {x, y, x, y + 1};
  if (x == 0) return {y, 0, y + 1, 0};
  if (x == n + 1) return {y, n + 1, y + 1, n + 1};
  return {x - 1, y + 1, x, y + 1};
}

}  // namespace

DilutedGraph dual_config(const DilutedGraph& dg) {
  const auto& kind = require_lattice(dg, "dual_config");
  if (dg.mode() != graphgen::DilutionMode::bond) throw KindError("dual_config needs bond dilution");
  const std::size_t W = kind.width;
  const std::size_t H = kind.height;
  const bool primal_shape = W == H + 1;
  if (!primal_shape && H != W + 1) {
    throw KindError(fmt::format("dual_config needs a box whose sides differ by one, got {}", kind.tag()));
  }
  // n is the parameter of the LR-shaped box [0, n+1] x [0, n].
  const std::size_t n = primal_shape ? H - 1 : W - 1;
  auto dual_graph = std::make_shared<const Graph>(
      primal_shape ? graphgen::gen_lattice_rect(W - 1, H + 1) : graphgen::gen_lattice_rect(W + 1, H - 1));
  const Graph& src = dg.base();
  const Graph& dst = *dual_graph;

  std::vector<std::uint8_t> mask(dst.edge_count(), 0);
  if (primal_shape) {
    for (EdgeId e = 0; e < src.edge_count(); ++e) {
      const auto [ax, ay] = src.lattice_coords(src.edge(e).u);
      const auto [bx, by] = src.lattice_coords(src.edge(e).v);
      const auto d = dual_partner({ax, ay, bx, by}, n);
      const auto id = find_edge(dst, dst.lattice_vertex(d.ax, d.ay), dst.lattice_vertex(d.bx, d.by));
      mask[id] = dg.bond_mask()[e] ? 0 : 1;
    }
  } else {
    for (EdgeId e = 0; e < dst.edge_count(); ++e) {
      const auto [ax, ay] = dst.lattice_coords(dst.edge(e).u);
      const auto [bx, by] = dst.lattice_coords(dst.edge(e).v);
      const auto d = dual_partner({ax, ay, bx, by}, n);
      const auto id = find_edge(src, src.lattice_vertex(d.ax, d.ay), src.lattice_vertex(d.bx, d.by));
      mask[e] = dg.bond_mask()[id] ? 0 : 1;
    }
  }
  return DilutedGraph(std::move(dual_graph), graphgen::DilutionMode::bond, std::move(mask),
                      1.0 - dg.keep_prob(), dg.seed());
}

}  // namespace dilcp::percolate
