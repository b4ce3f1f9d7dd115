#pragma once

#include <cstddef>
#include <span>

namespace dilcp {

/// Ordinary (or weighted) least squares line y = intercept + slope * x.
/// window is the range of the abscissa actually fitted, in the caller's units.
struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  std::size_t points = 0;
  /// Standard error of the slope; zero when points < 3.
  double slope_stderr = 0.0;
};

/// Requires at least two points with distinct x. weights may be empty.
FitResult fit_line(std::span<const double> x, std::span<const double> y,
                   std::span<const double> weights = {});

}  // namespace dilcp
