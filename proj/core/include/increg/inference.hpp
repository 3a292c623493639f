#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "increg/data.hpp"
#include "increg/penalized.hpp"

namespace increg {

/// Refit summary over the rows whose first-stage intercept is exactly zero.
struct TwoStepResult {
  VectorXd beta_tilde;
  IndexSet selected;   // rows kept for the refit
  Eigen::Index m = 0;  // number of kept rows
  Eigen::Index n = 0;  // total rows in the original sample
  double sigma_hat = 0.0;
  MatrixXd gram_hat;  // X'X / n over all rows
};

struct ConfidenceInterval {
  double center = 0.0;
  double half_width = 0.0;
  double level = 0.0;  // 1 - alpha

  double lower() const { return center - half_width; }
  double upper() const { return center + half_width; }
  bool contains(double value) const {
    return std::abs(value - center) <= half_width;
  }
};

struct RegionTest {
  double statistic = 0.0;
  double threshold = 0.0;
  bool member = false;
};

/// OLS refit on the first-stage inactive rows, plus the noise-scale estimate
/// sigma_hat = sqrt(RSS / m). Requires m > d (throws EmptySubset otherwise).
/// With df_correct the divisor becomes m - d.
TwoStepResult two_step_fit(const Dataset& data, const FitResult& first_stage,
                           bool df_correct = false);

/// Two-sided interval for component j:
/// beta_tilde_j -+ z_{alpha/2} * sigma_hat * sqrt((gram^{-1})_jj / m).
/// With use_full_n the scaling uses n instead of m.
ConfidenceInterval component_interval(const TwoStepResult& result,
                                      Eigen::Index j, double alpha,
                                      bool use_full_n = false);

/// Ellipsoidal membership test:
/// sqrt(m) * ||gram^{1/2} (beta_tilde - beta0)|| / sigma_hat against the
/// upper-alpha quantile of sqrt(chi-squared(d)).
RegionTest chisq_region_test(const TwoStepResult& result, const VectorXd& beta0,
                             double alpha, bool use_full_n = false);

/// Membership test for the image A*beta with A of full row rank q <= d:
/// sqrt(m) * ||(A gram^{-1} A')^{-1/2} A (beta_tilde - beta0)|| / sigma_hat
/// against the upper-alpha quantile of sqrt(chi-squared(q)).
RegionTest linear_map_region_test(const TwoStepResult& result,
                                  const MatrixXd& A, const VectorXd& beta0,
                                  double alpha, bool use_full_n = false);

/// OLS of (Y - mu_true) restricted to the rows where mu_true is exactly zero.
VectorXd oracle_fit(const Dataset& data, const VectorXd& mu_true);

/// True when the fit flags every row with |mu_true| > s1_threshold as active
/// and every other row as inactive.
bool partial_selection_event(const FitResult& result, const VectorXd& mu_true,
                             double s1_threshold);

/// Inverse of a symmetric positive-definite matrix via eigendecomposition;
/// throws SingularGram when any eigenvalue falls below 1e-12.
MatrixXd inverse_spd(const MatrixXd& S);

/// Symmetric PSD square root (negative eigenvalues clamped to zero).
MatrixXd sym_sqrt(const MatrixXd& S);

/// Symmetric inverse square root; throws SingularGram when any eigenvalue
/// falls below 1e-12.
MatrixXd sym_inv_sqrt(const MatrixXd& S);

}  // namespace increg
