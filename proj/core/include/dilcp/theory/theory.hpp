#pragma once

#include <cstddef>

namespace dilcp::theory {

/// nu - 1 - ln(nu); zero at nu = 1 and positive elsewhere.
double alpha_nu(double nu);

/// Subcritical cluster-size density s^{-3/2} e^{-s alpha(nu)} / (nu sqrt(2 pi)).
/// This is the large-s asymptotic form, not a normalized PMF.
double cluster_pmf(std::size_t s, double nu);

/// Quadrature of u(t) = int_0^inf x exp(-b x - t exp(-a x)) dx to the given
/// relative tolerance. The integrand is handled relative to its peak so very
/// large t does not underflow.
double noest_u_integral(double t, double a, double b, double rel_tol = 1e-8);

/// Location (1/a) log(a t / b) of the maximum of -b x - t exp(-a x).
double noest_saddle_point(double t, double a, double b);

/// Laplace-method value e^{-b/a} (a t / b)^{-b/a} x* sqrt(2 pi / (a b)).
/// Requires a t / b > 1.
double noest_u_asymptotic(double t, double a, double b);

/// Closed form t^{-c} Gamma(c) (ln t - psi(c)) / a^2 with c = b/a, obtained
/// by substituting y = t e^{-a x}; it differs from the integral only by an
/// incomplete-gamma tail of order e^{-t}.
double noest_u_gamma_form(double t, double a, double b);

/// Limit of noest_u_integral / noest_u_asymptotic as t grows:
/// Gamma(c) e^c c^{-c} sqrt(c / (2 pi)) with c = b/a. The approach is slow,
/// with relative correction (ln c - psi(c)) / (a x*).
double noest_ratio_limit(double a, double b);

struct ErSaddle {
  double u = 0.0;      ///< t^{-theta}
  double theta = 0.0;  ///< alpha(nu) / A
  double s0 = 0.0;     ///< saddle location (log t) / A
};

/// Saddle-point decay of the density on a subcritical diluted ER graph whose
/// clusters of size s survive for time e^{A s}.
ErSaddle er_u_saddle(double t, double nu, double A);

/// Quadrature of int_0^inf s^{-1/2} (1 / (sqrt(2 pi) nu)) e^{-s alpha(nu)}
/// exp(-t e^{-A s}) ds, i.e. s P(s) weighted by the survival probability.
double er_u_integral(double t, double nu, double A, double rel_tol = 1e-8);

/// Local slope d log u / d log t of er_u_integral by a centred difference
/// with half-width h in log t.
double er_u_integral_slope(double t, double nu, double A, double h = 0.05);

/// (1 / alpha(nu)) (log N - (5/2) log log N). Requires nu in (0, 1), N >= 16.
double largest_cluster_asymptotic(double n, double nu);

}  // namespace dilcp::theory
