#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "dilcp/regression.hpp"

namespace dilcp::harness {

/// Closed abscissa interval; the default admits everything.
struct Window {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double x) const noexcept { return x >= lo && x <= hi; }
};

using Point = std::pair<double, double>;

/// Least squares of log u on log t over points with t in window, t > 0 and
/// u > 0. Throws SizeError with fewer than 3 such points. The reported
/// window is in t units.
FitResult fit_power_law(std::span<const Point> points, Window window = {});

/// Least squares of log u on t over points with t in window and u > 0.
FitResult fit_exponential(std::span<const Point> points, Window window = {});

/// Least squares of log sigma_N on N; the slope estimates gamma2. censored
/// may be empty; otherwise any flagged entry raises ParameterError listing the
/// censored sizes. Needs at least 3 sizes.
FitResult estimate_gamma2(std::span<const double> sizes, std::span<const double> times,
                          std::span<const std::uint8_t> censored = {});

/// Points (t_i, u_i) from parallel arrays.
std::vector<Point> zip_points(std::span<const double> t, std::span<const double> u);

}  // namespace dilcp::harness
