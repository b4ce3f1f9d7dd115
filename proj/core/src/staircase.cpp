#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <fmt/format.h>

#include "dilcp/error.hpp"
#include "dilcp/percolate/percolate.hpp"

namespace dilcp::percolate {

namespace {

// Chronological loop erasure of a walk whose consecutive vertices are adjacent.
std::vector<Vertex> loop_erase(const std::vector<Vertex>& walk) {
  std::vector<Vertex> out;
  std::unordered_map<Vertex, std::size_t> position;
  for (auto v : walk) {
    auto it = position.find(v);
    if (it != position.end()) {
      for (std::size_t i = it->second + 1; i < out.size(); ++i) position.erase(out[i]);
      out.resize(it->second + 1);
      continue;
    }
    position.emplace(v, out.size());
    out.push_back(v);
  }
  return out;
}

}  // namespace

Path stitch_paths(std::span<const Path> crossings) {
  if (crossings.empty()) throw ParameterError("stitch_paths needs at least one path");
  const auto longest = std::max_element(crossings.begin(), crossings.end(),
                                        [](const Path& a, const Path& b) { return a.length() < b.length(); });
  if (crossings.size() == 1) return crossings.front();

  std::vector<Vertex> walk;
  std::size_t entry = 0;
  for (std::size_t k = 0; k + 1 < crossings.size(); ++k) {
    const auto& cur = crossings[k].vertices;
    const auto& next = crossings[k + 1].vertices;
    if (cur.empty() || next.empty()) throw ParameterError("stitch_paths: empty path");
    std::unordered_map<Vertex, std::size_t> in_next;
    for (std::size_t i = 0; i < next.size(); ++i) in_next.emplace(next[i], i);

    // Forward from the entry first, then backward.
    std::optional<std::size_t> exit;
    bool forward = true;
    for (std::size_t i = entry; i < cur.size() && !exit; ++i) {
      if (in_next.count(cur[i])) exit = i;
    }
    if (!exit) {
      forward = false;
      for (std::size_t i = entry + 1; i-- > 0 && !exit;) {
        if (in_next.count(cur[i])) exit = i;
      }
    }
    if (!exit) {
      throw ParameterError(fmt::format("stitch_paths: paths {} and {} share no vertex", k, k + 1));
    }
    if (forward) {
      for (std::size_t i = entry; i < *exit; ++i) walk.push_back(cur[i]);
    } else {
      for (std::size_t i = entry; i > *exit; --i) walk.push_back(cur[i]);
    }
    entry = in_next.at(cur[*exit]);
  }
  // Last path: the longer direction from its entry.
  const auto& last = crossings.back().vertices;
  if (last.size() - entry >= entry + 1) {
    for (std::size_t i = entry; i < last.size(); ++i) walk.push_back(last[i]);
  } else {
    for (std::size_t i = entry + 1; i-- > 0;) walk.push_back(last[i]);
  }

  Path stitched{loop_erase(walk)};
  if (stitched.length() < longest->length()) return *longest;
  return stitched;
}

std::size_t staircase_strip_height(std::size_t side, double strip_constant) {
  const double k = strip_constant * std::log(static_cast<double>(side));
  if (!(k >= 1.0)) {
    throw ParameterError(fmt::format("strip height C log L = {} must be at least 1", k));
  }
  return static_cast<std::size_t>(std::floor(k));
}

std::optional<Path> staircase_long_path(const DilutedGraph& dg, double strip_constant) {
  const auto rect = full_rect(dg);
  const std::size_t width = rect.x1 + 1;
  const std::size_t height = rect.y1 + 1;
  const std::size_t k_height = staircase_strip_height(width, strip_constant);
  const std::size_t strips = (height - 1) / k_height;
  if (strips == 0) return std::nullopt;
  const std::size_t box = std::min(k_height, width - 1);

  std::vector<Path> pieces;
  for (std::size_t k = 1; k <= strips; ++k) {
    const Rect strip{0, width - 1, (k - 1) * k_height, k * k_height};
    auto h = find_crossing(dg, strip, Orientation::left_right);
    if (!h) return std::nullopt;
    if (k % 2 == 0) std::reverse(h->vertices.begin(), h->vertices.end());
    pieces.push_back(std::move(*h));
    if (k == strips) break;
    const bool right_end = k % 2 == 1;
    const Rect end_box = right_end ? Rect{width - 1 - box, width - 1, (k - 1) * k_height, (k + 1) * k_height}
                                   : Rect{0, box, (k - 1) * k_height, (k + 1) * k_height};
    auto v = find_crossing(dg, end_box, Orientation::top_bottom,
                           right_end ? SeedOrder::descending : SeedOrder::ascending);
    if (!v) return std::nullopt;
    pieces.push_back(std::move(*v));
  }
  try {
    return stitch_paths(pieces);
  } catch (const ParameterError&) {
    return std::nullopt;
  }
}

CrossingCalibration estimate_crossing_gamma(double p, std::size_t length,
                                            std::span<const std::size_t> heights,
                                            std::size_t trials, std::uint64_t seed) {
  if (heights.size() < 2) throw SizeError("estimate_crossing_gamma needs at least two heights");
  CrossingCalibration cal;
  std::vector<double> xs, ys;
  for (std::size_t hi = 0; hi < heights.size(); ++hi) {
    const std::size_t k = heights[hi];
    auto strip = std::make_shared<const graphgen::Graph>(graphgen::gen_lattice_rect(length, k + 1));
    std::size_t failures = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      const auto dg = graphgen::dilute_bonds(strip, p, seed + hi * trials + t);
      if (!has_crossing(dg, full_rect(dg), Orientation::left_right)) ++failures;
    }
    const double rate = static_cast<double>(failures) / static_cast<double>(trials);
    cal.heights.push_back(k);
    cal.failure_rates.push_back(rate);
    if (failures > 0) {
      xs.push_back(static_cast<double>(k));
      ys.push_back(std::log(rate / static_cast<double>(length)));
    }
  }
  if (xs.size() < 2) {
    throw NumericalError("estimate_crossing_gamma: fewer than two heights with observed failures");
  }
  cal.fit = fit_line(xs, ys);
  cal.gamma = -cal.fit.slope;
  return cal;
}

}  // namespace dilcp::percolate
