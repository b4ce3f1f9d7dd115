#include "dilcp/regression.hpp"

#include <algorithm>
#include <cmath>

#include "dilcp/error.hpp"

namespace dilcp {

FitResult fit_line(std::span<const double> x, std::span<const double> y,
                   std::span<const double> weights) {
  if (x.size() != y.size()) throw ParameterError("fit_line: x and y differ in length");
  if (!weights.empty() && weights.size() != x.size()) {
    throw ParameterError("fit_line: weights differ in length from x");
  }
  if (x.size() < 2) throw SizeError("fit_line needs at least two points");

  double sw = 0, sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double w = weights.empty() ? 1.0 : weights[i];
    sw += w;
    sx += w * x[i];
    sy += w * y[i];
  }
  const double mx = sx / sw;
  const double my = sy / sw;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double w = weights.empty() ? 1.0 : weights[i];
    sxx += w * (x[i] - mx) * (x[i] - mx);
    sxy += w * (x[i] - mx) * (y[i] - my);
    syy += w * (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0) throw SizeError("fit_line needs at least two distinct abscissae");

  FitResult fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.points = x.size();
  const double ss_res = std::max(0.0, syy - fit.slope * sxy);
  fit.r_squared = syy > 0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  fit.window_lo = *lo;
  fit.window_hi = *hi;
  if (x.size() >= 3) {
    // Weights are taken as relative, so the scale comes from the residuals.
    const double dof = static_cast<double>(x.size() - 2);
    fit.slope_stderr = std::sqrt(ss_res / dof / sxx);
  }
  return fit;
}

}  // namespace dilcp
