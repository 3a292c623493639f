#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "increg/data.hpp"
#include "increg/penalized.hpp"
#include "increg/rng.hpp"

namespace increg {

struct LambdaProcedureConfig {
  double pure_fraction = 0.7;   // share of rows treated as outlier-free
  double test_fraction = 0.2;   // share of the pure set held out for scoring
  double quantile_q = 0.95;     // order of the upper grid bound
  double alpha_l = 5.0;         // hard-penalty lower bound, times sigma_pure
  double soft_lambda_l = 0.5;   // soft-penalty lower bound
  std::size_t grid_size = 50;
  std::uint64_t seed = 0;

  void validate() const;
};

struct LambdaSelection {
  double lambda_opt = 0.0;
  double lambda_low = 0.0;
  double lambda_high = 0.0;
  std::vector<std::pair<double, double>> test_loss_curve;  // (lambda, loss)
  bool clamped = false;  // lower bound fell back to lambda_high / 10
};

enum class TailRegime { BoundedX, GaussianX };

/// Closed-form scale bounds for Gaussian noise: gamma_n = sqrt(2 sigma^2 ln n)
/// in both regimes; kappa_n = sqrt(d) * sigma_x for bounded designs and
/// sqrt(2 d sigma_x^2 ln n) for Gaussian designs.
struct SpecBounds {
  double gamma_n = 0.0;
  double kappa_n = 0.0;
};

SpecBounds gaussian_spec_bounds(std::size_t n, std::size_t d, double sigma,
                                double sigma_x, TailRegime regime);

/**
 * @brief Data-driven regularization choice by held-out prediction loss.
 *
 * 1. OLS residuals on the full sample.
 * 2. Pure set: the n_pure rows with the smallest |residual| (ties by index).
 * 3. OLS refit on the pure set; residuals updated for all rows.
 * 4. Pure/contaminated split recomputed from the updated residuals.
 * 5. A seeded draw (without replacement) of test rows from the pure set;
 *    everything else is training data.
 * 6. Penalized fits on the training rows over a log-spaced grid on
 *    [lambda_low, lambda_high], where lambda_high is the `quantile_q`
 *    nearest-rank order statistic of all updated |residuals| and lambda_low
 *    is alpha_l * sd(pure residuals) (Hard) or soft_lambda_l (Soft).
 * 7. lambda_opt minimizes the summed squared test-row prediction error;
 *    ties resolve to the smallest lambda.
 *
 * The overload taking an Rng consumes exactly one uniform per held-out row
 * from the caller's stream, so several selections can share a stream in a
 * fixed order. The seed-only overload derives a fresh stream from
 * config.seed.
 */
LambdaSelection data_driven_lambda(const Dataset& data, PenaltyKind kind,
                                   const LambdaProcedureConfig& config,
                                   Rng& rng);

LambdaSelection data_driven_lambda(const Dataset& data, PenaltyKind kind,
                                   const LambdaProcedureConfig& config);

/// Interval-construction rule: six times the standard deviation of the
/// updated pure-set residuals (steps 1 to 4 above).
double ci_lambda(const Dataset& data, const LambdaProcedureConfig& config);

}  // namespace increg
