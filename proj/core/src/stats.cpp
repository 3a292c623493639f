#include "increg/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include "increg/errors.hpp"

namespace increg::stats {

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw ConfigError("normal_quantile: p must lie in (0, 1)");
  }
  static const boost::math::normal_distribution<double> dist(0.0, 1.0);
  return boost::math::quantile(dist, p);
}

double chisq_quantile(double p, double df) {
  if (!(p > 0.0 && p < 1.0)) {
    throw ConfigError("chisq_quantile: p must lie in (0, 1)");
  }
  if (!(df > 0.0)) {
    throw ConfigError("chisq_quantile: df must be positive");
  }
  const boost::math::chi_squared_distribution<double> dist(df);
  return boost::math::quantile(dist, p);
}

double chi_upper_quantile(double alpha, double df) {
  return std::sqrt(chisq_quantile(1.0 - alpha, df));
}

double mean(const std::vector<double>& v) {
  if (v.empty()) {
    throw ConfigError("mean: empty sample");
  }
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_sd(const std::vector<double>& v) {
  if (v.size() < 2) {
    throw ConfigError("sample_sd: need at least two values");
  }
  const double m = mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

double kolmogorov_sf(double t) {
  if (t <= 0.0) return 1.0;
  if (t < 1.18) {
    // Theta-transformed series for the CDF; the direct series below needs
    // hundreds of near-unit terms in this range.
    const double pi = std::numbers::pi;
    const double y = std::exp(-pi * pi / (8.0 * t * t));
    const double cdf = std::sqrt(2.0 * pi) / t *
                       (y + std::pow(y, 9) + std::pow(y, 25) +
                        std::pow(y, 49));
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  // Alternating series 2 * sum_k (-1)^{k-1} exp(-2 k^2 t^2).
  double s = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * t * t);
    s += (k % 2 == 1) ? term : -term;
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * s, 0.0, 1.0);
}

KsResult ks_test_standard_normal(std::vector<double> sample) {
  const std::size_t n = sample.size();
  if (n == 0) {
    throw ConfigError("ks_test_standard_normal: empty sample");
  }
  std::sort(sample.begin(), sample.end());
  static const boost::math::normal_distribution<double> dist(0.0, 1.0);
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = boost::math::cdf(dist, sample[i]);
    const double lo = static_cast<double>(i) / static_cast<double>(n);
    const double hi = static_cast<double>(i + 1) / static_cast<double>(n);
    d = std::max(d, std::max(f - lo, hi - f));
  }
  const double sn = std::sqrt(static_cast<double>(n));
  const double t = d * (sn + 0.12 + 0.11 / sn);
  return KsResult{d, kolmogorov_sf(t)};
}

}  // namespace increg::stats
