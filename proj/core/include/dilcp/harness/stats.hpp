#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <vector>

namespace dilcp::harness {

double mean(std::span<const double> xs);
/// Sample standard deviation (n - 1 denominator); zero for n < 2.
double stddev(std::span<const double> xs);
/// Standard error of the mean.
double sem(std::span<const double> xs);
/// Midpoint median.
double median(std::vector<double> xs);

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t dof = 0;
};

/// Kolmogorov survival function Q(x) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 x^2).
double kolmogorov_q(double x);

/// One-sample Kolmogorov-Smirnov test against a continuous CDF.
TestResult ks_one_sample(std::vector<double> sample, const std::function<double(double)>& cdf);
/// Two-sample Kolmogorov-Smirnov test.
TestResult ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Pearson chi-square goodness of fit of observed counts against expected
/// probabilities keyed by category. Categories whose expected count is below
/// min_expected are pooled into one bin. dof = bins - 1.
template <class Key>
TestResult chi_square_gof(const std::map<Key, std::size_t>& observed, const std::map<Key, double>& expected,
                          double min_expected = 5.0);

/// Upper tail of the chi-square distribution with dof degrees of freedom.
double chi_square_sf(double statistic, std::size_t dof);

namespace detail {
TestResult chi_square_from_bins(std::span<const double> observed, std::span<const double> expected,
                                double min_expected);
}

template <class Key>
TestResult chi_square_gof(const std::map<Key, std::size_t>& observed, const std::map<Key, double>& expected,
                          double min_expected) {
  std::size_t total = 0;
  for (const auto& [k, c] : observed) total += c;
  std::vector<double> obs;
  std::vector<double> exp;
  double stray = 0.0;
  for (const auto& [k, c] : observed) {
    if (!expected.count(k)) stray += static_cast<double>(c);
  }
  for (const auto& [k, prob] : expected) {
    auto it = observed.find(k);
    obs.push_back(it == observed.end() ? 0.0 : static_cast<double>(it->second));
    exp.push_back(prob * static_cast<double>(total));
  }
  // Outcomes the model gives probability zero land in a zero-expectation bin.
  obs.push_back(stray);
  exp.push_back(0.0);
  return detail::chi_square_from_bins(obs, exp, min_expected);
}

}  // namespace dilcp::harness
