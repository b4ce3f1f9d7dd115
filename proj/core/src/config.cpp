#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include <fmt/format.h>

#include "dilcp/error.hpp"
#include "dilcp/harness/config.hpp"

namespace dilcp::harness {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw UsageError(fmt::format("config: '{}' must be an object", where));
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw UsageError(fmt::format("config: unknown key '{}' in {}", key, where));
  }
}

template <class T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw UsageError(fmt::format("config: bad value for '{}' in {}: {}", key, where, e.what()));
  }
}

}  // namespace

std::vector<double> ScheduleSpec::times() const {
  std::vector<double> out;
  out.reserve(count);
  double t = t0;
  for (std::size_t i = 0; i < count; ++i, t *= ratio) out.push_back(t);
  return out;
}

void ExperimentConfig::validate() const {
  if (experiment.empty()) throw UsageError("config: 'experiment' is required");
  static const std::set<std::string> families{"path1d", "lattice2d", "erdos_renyi"};
  if (!families.count(graph.family)) {
    throw UsageError(fmt::format("config: graph.family must be path1d, lattice2d or erdos_renyi, got '{}'",
                                 graph.family));
  }
  if (graph.sizes.empty()) throw UsageError("config: graph.sizes must be nonempty");
  if (std::any_of(graph.sizes.begin(), graph.sizes.end(), [](std::size_t n) { return n == 0; })) {
    throw UsageError("config: graph.sizes must be positive");
  }
  if (graph.family == "erdos_renyi" && !(graph.mu >= 0.0)) throw UsageError("config: graph.mu must be >= 0");
  if (dilution.mode != "bond" && dilution.mode != "site") {
    throw UsageError(fmt::format("config: dilution.mode must be bond or site, got '{}'", dilution.mode));
  }
  if (dilution.p.empty()) throw UsageError("config: dilution.p must be nonempty");
  for (double p : dilution.p) {
    if (!(p >= 0.0 && p <= 1.0)) throw UsageError(fmt::format("config: dilution.p value {} outside [0, 1]", p));
  }
  if (lambda.empty()) throw UsageError("config: lambda must be nonempty");
  for (double l : lambda) {
    if (!(l > 0.0) || !std::isfinite(l)) throw UsageError(fmt::format("config: lambda value {} must be positive", l));
  }
  if (replicates == 0) throw UsageError("config: replicates must be at least 1");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw UsageError("config: t_max must be positive and finite");
  if (!(schedule.t0 > 0.0) || !(schedule.ratio > 1.0) || schedule.count == 0) {
    throw UsageError("config: schedule needs t0 > 0, ratio > 1 and count >= 1 (strictly increasing times)");
  }
  if (fit_window && !(fit_window->lo < fit_window->hi)) throw UsageError("config: fit_window needs lo < hi");
  if (gamma2) {
    if (gamma2->sizes.size() < 3) throw UsageError("config: gamma2.sizes needs at least 3 sizes");
    if (gamma2->replicates == 0) throw UsageError("config: gamma2.replicates must be at least 1");
    if (!(gamma2->t_max > 0.0)) throw UsageError("config: gamma2.t_max must be positive");
  }
}

json ExperimentConfig::to_json() const {
  json j;
  j["schema_version"] = kConfigSchemaVersion;
  j["experiment"] = experiment;
  j["graph"] = {{"family", graph.family}, {"sizes", graph.sizes}, {"mu", graph.mu}};
  j["dilution"] = {{"mode", dilution.mode}, {"p", dilution.p}};
  j["lambda"] = lambda;
  j["replicates"] = replicates;
  j["seed"] = seed;
  j["t_max"] = t_max;
  j["schedule"] = {{"t0", schedule.t0}, {"ratio", schedule.ratio}, {"count", schedule.count}};
  j["output"] = output;
  if (fit_window) j["fit_window"] = {{"lo", fit_window->lo}, {"hi", fit_window->hi}};
  if (gamma2) {
    j["gamma2"] = {{"sizes", gamma2->sizes}, {"replicates", gamma2->replicates}, {"t_max", gamma2->t_max}};
  }
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  reject_unknown(j,
                 {"schema_version", "experiment", "graph", "dilution", "lambda", "replicates", "seed", "t_max",
                  "schedule", "output", "fit_window", "gamma2"},
                 "config");
  if (j.contains("schema_version") && j.at("schema_version") != kConfigSchemaVersion) {
    throw UsageError(fmt::format("config: unsupported schema_version {}", j.at("schema_version").dump()));
  }
  ExperimentConfig cfg;
  read(j, "experiment", cfg.experiment, "config");
  if (!j.contains("graph")) throw UsageError("config: 'graph' is required");
  const auto& g = j.at("graph");
  reject_unknown(g, {"family", "sizes", "mu"}, "graph");
  read(g, "family", cfg.graph.family, "graph");
  read(g, "sizes", cfg.graph.sizes, "graph");
  read(g, "mu", cfg.graph.mu, "graph");
  if (j.contains("dilution")) {
    const auto& d = j.at("dilution");
    reject_unknown(d, {"mode", "p"}, "dilution");
    read(d, "mode", cfg.dilution.mode, "dilution");
    read(d, "p", cfg.dilution.p, "dilution");
  }
  read(j, "lambda", cfg.lambda, "config");
  read(j, "replicates", cfg.replicates, "config");
  read(j, "seed", cfg.seed, "config");
  read(j, "t_max", cfg.t_max, "config");
  if (j.contains("schedule")) {
    const auto& s = j.at("schedule");
    reject_unknown(s, {"t0", "ratio", "count"}, "schedule");
    read(s, "t0", cfg.schedule.t0, "schedule");
    read(s, "ratio", cfg.schedule.ratio, "schedule");
    read(s, "count", cfg.schedule.count, "schedule");
  }
  read(j, "output", cfg.output, "config");
  if (j.contains("fit_window")) {
    const auto& w = j.at("fit_window");
    reject_unknown(w, {"lo", "hi"}, "fit_window");
    if (!w.contains("lo") || !w.contains("hi")) throw UsageError("config: fit_window needs both lo and hi");
    Window win;
    read(w, "lo", win.lo, "fit_window");
    read(w, "hi", win.hi, "fit_window");
    cfg.fit_window = win;
  }
  if (j.contains("gamma2")) {
    const auto& g2 = j.at("gamma2");
    reject_unknown(g2, {"sizes", "replicates", "t_max"}, "gamma2");
    Gamma2Spec spec;
    read(g2, "sizes", spec.sizes, "gamma2");
    read(g2, "replicates", spec.replicates, "gamma2");
    read(g2, "t_max", spec.t_max, "gamma2");
    cfg.gamma2 = spec;
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open config {}", path.string()));
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw UsageError(fmt::format("config {} is not valid JSON: {}", path.string(), e.what()));
  }
  return ExperimentConfig::from_json(j);
}

void save_config(const ExperimentConfig& cfg, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError(fmt::format("cannot write config {}", path.string()));
  out << cfg.to_json().dump(2) << '\n';
}

}  // namespace dilcp::harness
