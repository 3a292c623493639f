#pragma once

#include <cstddef>
#include <vector>

namespace increg::stats {

/// Standard normal quantile Phi^{-1}(p), p in (0, 1).
double normal_quantile(double p);

/// Chi-squared quantile at probability p (lower tail), df > 0.
double chisq_quantile(double p, double df);

/// Upper-alpha quantile of the square root of a chi-squared(df) variable.
double chi_upper_quantile(double alpha, double df);

double mean(const std::vector<double>& v);

/// Sample standard deviation (n - 1 denominator); requires v.size() >= 2.
double sample_sd(const std::vector<double>& v);

struct KsResult {
  double statistic = 0.0;
  double p_value = 0.0;
};

/// One-sample Kolmogorov-Smirnov test of `sample` against N(0, 1).
/// P-value uses the asymptotic Kolmogorov distribution with the usual
/// finite-sample effective-size correction.
KsResult ks_test_standard_normal(std::vector<double> sample);

/// Survival function of the Kolmogorov distribution, Q(t) for t > 0.
double kolmogorov_sf(double t);

}  // namespace increg::stats
