#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "dilcp/error.hpp"
#include "dilcp/graphgen/graph.hpp"

namespace dilcp::graphgen {

namespace {

std::string next_content_line(std::istream& is) {
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    return line;
  }
  throw IoError("unexpected end of input");
}

}  // namespace

void write_edge_list(std::ostream& os, const Graph& g) {
  fmt::print(os, "n {} kind {}\n", g.vertex_count(), g.kind().tag());
  for (const auto& e : g.edges()) fmt::print(os, "{} {}\n", e.u, e.v);
}

Graph read_edge_list(std::istream& is) {
  std::istringstream header(next_content_line(is));
  std::string n_key, kind_key, tag;
  std::size_t n = 0;
  if (!(header >> n_key >> n >> kind_key >> tag) || n_key != "n" || kind_key != "kind") {
    throw IoError("edge list header must read `n <count> kind <tag>`");
  }
  const auto kind = GraphKind::parse(tag);
  std::vector<Edge> edges;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line.front() == '#') continue;
    std::istringstream row(line);
    std::uint64_t u = 0, v = 0;
    if (!(row >> u >> v)) throw IoError(fmt::format("bad edge line '{}'", line));
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  return Graph(n, std::move(edges), kind);
}

void write_mask(std::ostream& os, const DilutedGraph& dg) {
  const auto mask = dg.mode() == DilutionMode::bond ? dg.bond_mask() : dg.active_mask();
  fmt::print(os, "mask {} {} p {} seed {}\n", to_string(dg.mode()), mask.size(), dg.keep_prob(),
             dg.seed());
  for (auto flag : mask) os << (flag ? "1\n" : "0\n");
}

DilutedGraph read_mask(std::istream& is, GraphPtr base) {
  std::istringstream header(next_content_line(is));
  std::string mask_key, mode_name, p_key, seed_key;
  std::size_t count = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
  if (!(header >> mask_key >> mode_name >> count >> p_key >> p >> seed_key >> seed) ||
      mask_key != "mask" || p_key != "p" || seed_key != "seed") {
    throw IoError("mask header must read `mask <bond|site> <count> p <p> seed <seed>`");
  }
  DilutionMode mode;
  if (mode_name == "bond") {
    mode = DilutionMode::bond;
  } else if (mode_name == "site") {
    mode = DilutionMode::site;
  } else {
    throw IoError(fmt::format("unknown dilution mode '{}'", mode_name));
  }
  std::vector<std::uint8_t> mask;
  mask.reserve(count);
  std::string line;
  while (mask.size() < count && std::getline(is, line)) {
    if (line.empty() || line.front() == '#') continue;
    if (line == "0" || line == "0\r") {
      mask.push_back(0);
    } else if (line == "1" || line == "1\r") {
      mask.push_back(1);
    } else {
      throw IoError(fmt::format("mask flag must be 0 or 1, got '{}'", line));
    }
  }
  if (mask.size() != count) throw IoError("mask ended before its declared count");
  return DilutedGraph(std::move(base), mode, std::move(mask), p, seed);
}

}  // namespace dilcp::graphgen
