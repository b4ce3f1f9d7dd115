#include <cmath>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "dilcp/error.hpp"
#include "dilcp/harness/fit.hpp"

namespace dilcp::harness {

namespace {

FitResult fit_transformed(std::span<const Point> points, Window window, bool log_x, const char* what) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& [t, u] : points) {
    if (!window.contains(t) || !(u > 0.0) || (log_x && !(t > 0.0))) continue;
    xs.push_back(log_x ? std::log(t) : t);
    ys.push_back(std::log(u));
  }
  if (xs.size() < 3) {
    throw SizeError(fmt::format("{} needs at least 3 usable points in [{}, {}], got {}", what, window.lo, window.hi,
                                xs.size()));
  }
  auto fit = fit_line(xs, ys);
  fit.window_lo = log_x ? std::exp(fit.window_lo) : fit.window_lo;
  fit.window_hi = log_x ? std::exp(fit.window_hi) : fit.window_hi;
  return fit;
}

}  // namespace

FitResult fit_power_law(std::span<const Point> points, Window window) {
  return fit_transformed(points, window, true, "fit_power_law");
}

FitResult fit_exponential(std::span<const Point> points, Window window) {
  return fit_transformed(points, window, false, "fit_exponential");
}

FitResult estimate_gamma2(std::span<const double> sizes, std::span<const double> times,
                          std::span<const std::uint8_t> censored) {
  if (sizes.size() != times.size() || (!censored.empty() && censored.size() != sizes.size())) {
    throw SizeError("estimate_gamma2: sizes, times and censored flags differ in length");
  }
  if (sizes.size() < 3) throw SizeError(fmt::format("estimate_gamma2 needs at least 3 sizes, got {}", sizes.size()));
  std::vector<double> bad;
  for (std::size_t i = 0; i < censored.size(); ++i) {
    if (censored[i]) bad.push_back(sizes[i]);
  }
  if (!bad.empty()) throw ParameterError(fmt::format("estimate_gamma2: censored survival times at N = {}", bad));
  std::vector<double> ys;
  for (double t : times) {
    if (!(t > 0.0)) throw DomainError(fmt::format("estimate_gamma2: survival time {} is not positive", t));
    ys.push_back(std::log(t));
  }
  return fit_line(sizes, ys);
}

std::vector<Point> zip_points(std::span<const double> t, std::span<const double> u) {
  if (t.size() != u.size()) throw SizeError("zip_points: arrays differ in length");
  std::vector<Point> out;
  out.reserve(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out.emplace_back(t[i], u[i]);
  return out;
}

}  // namespace dilcp::harness
