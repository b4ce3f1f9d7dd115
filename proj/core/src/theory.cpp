#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <fmt/format.h>

#include "dilcp/error.hpp"
#include "dilcp/theory/theory.hpp"

namespace dilcp::theory {

namespace {

using boost::math::quadrature::gauss_kronrod;

void require_subcritical(double nu) {
  if (!(nu > 0.0 && nu < 1.0)) throw DomainError(fmt::format("nu must lie in (0, 1), got {}", nu));
}

// Integrates exp(log_f) over [0, inf) split at `split`, scaled by
// exp(log_f(split)) so the peak region sits near 1.
double integrate_peaked(const std::function<double(double)>& log_f, double split, double rel_tol,
                        const char* what) {
  const double ref = log_f(split);
  if (!std::isfinite(ref)) throw NumericalError(fmt::format("{}: integrand not finite at split {}", what, split));
  auto f = [&](double x) {
    const double v = log_f(x) - ref;
    return v < -745.0 ? 0.0 : std::exp(v);
  };
  constexpr unsigned kDepth = 20;
  double err_lo = 0.0;
  double err_hi = 0.0;
  const double lo = split > 0.0 ? gauss_kronrod<double, 61>::integrate(f, 0.0, split, kDepth, rel_tol, &err_lo) : 0.0;
  const double hi = gauss_kronrod<double, 61>::integrate(f, split, std::numeric_limits<double>::infinity(), kDepth,
                                                         rel_tol, &err_hi);
  const double total = lo + hi;
  const double err = err_lo + err_hi;
  if (!std::isfinite(total) || total <= 0.0 || err > 10.0 * rel_tol * total) {
    throw NumericalError(fmt::format("{}: quadrature did not converge (value {}, error estimate {}, split {})",
                                     what, total, err, split));
  }
  return total * std::exp(ref);
}

}  // namespace

double alpha_nu(double nu) {
  if (!(nu > 0.0)) throw DomainError(fmt::format("alpha_nu needs nu > 0, got {}", nu));
  return nu - 1.0 - std::log(nu);
}

double cluster_pmf(std::size_t s, double nu) {
  require_subcritical(nu);
  if (s == 0) throw DomainError("cluster_pmf needs s >= 1");
  const double sd = static_cast<double>(s);
  return std::exp(-1.5 * std::log(sd) - sd * alpha_nu(nu)) / (nu * std::sqrt(2.0 * std::numbers::pi));
}

double noest_saddle_point(double t, double a, double b) {
  if (!(a > 0.0 && b > 0.0 && t > 0.0)) throw DomainError("noest_saddle_point needs a, b, t > 0");
  return std::log(a * t / b) / a;
}

double noest_u_integral(double t, double a, double b, double rel_tol) {
  if (!(a > 0.0 && b > 0.0)) throw DomainError(fmt::format("noest_u_integral needs a, b > 0, got {}, {}", a, b));
  if (!(t >= 0.0)) throw DomainError(fmt::format("noest_u_integral needs t >= 0, got {}", t));
  auto log_f = [=](double x) {
    if (x <= 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(x) - b * x - t * std::exp(-a * x);
  };
  double split = 1.0 / b;
  if (a * t > b) split = std::max(split, noest_saddle_point(t, a, b));
  return integrate_peaked(log_f, split, rel_tol, "noest_u_integral");
}

double noest_u_asymptotic(double t, double a, double b) {
  if (!(a > 0.0 && b > 0.0)) throw DomainError(fmt::format("noest_u_asymptotic needs a, b > 0, got {}, {}", a, b));
  const double z = a * t / b;
  if (!(z > 1.0)) throw DomainError(fmt::format("noest_u_asymptotic needs a t / b > 1, got {}", z));
  const double c = b / a;
  const double x_star = std::log(z) / a;
  return std::exp(-c) * std::pow(z, -c) * x_star * std::sqrt(2.0 * std::numbers::pi / (a * b));
}

double noest_u_gamma_form(double t, double a, double b) {
  if (!(a > 0.0 && b > 0.0 && t > 1.0)) throw DomainError("noest_u_gamma_form needs a, b > 0 and t > 1");
  const double c = b / a;
  return std::pow(t, -c) * std::tgamma(c) * (std::log(t) - boost::math::digamma(c)) / (a * a);
}

double noest_ratio_limit(double a, double b) {
  if (!(a > 0.0 && b > 0.0)) throw DomainError("noest_ratio_limit needs a, b > 0");
  const double c = b / a;
  return std::tgamma(c) * std::exp(c) * std::pow(c, -c) * std::sqrt(c / (2.0 * std::numbers::pi));
}

ErSaddle er_u_saddle(double t, double nu, double A) {
  require_subcritical(nu);
  if (!(A > 0.0)) throw DomainError(fmt::format("er_u_saddle needs A > 0, got {}", A));
  if (!(t >= 1.0)) throw DomainError(fmt::format("er_u_saddle needs t >= 1, got {}", t));
  ErSaddle out;
  out.theta = alpha_nu(nu) / A;
  out.u = std::pow(t, -out.theta);
  out.s0 = std::log(t) / A;
  return out;
}

double er_u_integral(double t, double nu, double A, double rel_tol) {
  require_subcritical(nu);
  if (!(A > 0.0)) throw DomainError(fmt::format("er_u_integral needs A > 0, got {}", A));
  if (!(t >= 0.0)) throw DomainError(fmt::format("er_u_integral needs t >= 0, got {}", t));
  const double alpha = alpha_nu(nu);
  const double log_pref = std::log(2.0) - std::log(std::sqrt(2.0 * std::numbers::pi) * nu);
  // s = w^2 turns the s^{-1/2} endpoint singularity into a smooth integrand.
  auto log_f = [=](double w) { return log_pref - w * w * alpha - t * std::exp(-A * w * w); };
  double split = 1.0;
  if (t * A > alpha) split = std::max(split, std::sqrt(std::log(t * A / alpha) / A));
  return integrate_peaked(log_f, split, rel_tol, "er_u_integral");
}

double er_u_integral_slope(double t, double nu, double A, double h) {
  const double hi = er_u_integral(t * std::exp(h), nu, A);
  const double lo = er_u_integral(t * std::exp(-h), nu, A);
  return (std::log(hi) - std::log(lo)) / (2.0 * h);
}

double largest_cluster_asymptotic(double n, double nu) {
  require_subcritical(nu);
  if (!(n >= 16.0)) throw DomainError(fmt::format("largest_cluster_asymptotic needs N >= 16, got {}", n));
  return (std::log(n) - 2.5 * std::log(std::log(n))) / alpha_nu(nu);
}

}  // namespace dilcp::theory
