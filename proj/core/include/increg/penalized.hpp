#pragma once

#include <cstddef>
#include <vector>

#include "increg/data.hpp"

namespace increg {

enum class PenaltyKind { Soft, Hard };

/// Per-observation intercept penalty. Soft: p(t) = 2*lambda*|t|.
/// Hard: p(t) = lambda^2 - (|t| - lambda)^2 for |t| < lambda, else lambda^2.
struct Penalty {
  PenaltyKind kind = PenaltyKind::Soft;
  double lambda = 1.0;

  void validate() const;
};

/// Shrinkage map (|v| - lambda)_+ * sgn(v); exactly 0 at |v| = lambda.
double soft_threshold(double v, double lambda) noexcept;

/// Keep-or-kill map v * 1{|v| > lambda}; 0 at |v| = lambda.
double hard_threshold(double v, double lambda) noexcept;

/// Penalty value p_lambda(|t|) for a single intercept.
double penalty_value(double t, const Penalty& penalty) noexcept;

/// Huber-type loss: x^2 on [-lambda, lambda], 2*lambda*|x| - lambda^2 outside.
double huber_rho(double x, double lambda) noexcept;

struct SolverConfig {
  double tol = 1e-8;
  std::size_t max_iter = 100;
  VectorXd beta_init;  // empty means start from zero

  void validate(Eigen::Index d) const;
};

struct FitResult {
  VectorXd beta;
  VectorXd mu;
  IndexSet active_set;  // rows with mu != 0
  std::size_t iterations = 0;
  bool converged = false;
  double objective = 0.0;
  std::vector<double> trace;  // ||beta^{k+1} - beta^k||_2, one entry per pass
  Penalty penalty;
};

/// Intercept update: thresholds the residuals Y - X*beta componentwise.
VectorXd update_mu(const Dataset& data, const VectorXd& beta,
                   const Penalty& penalty);

/// Coefficient update: OLS of (Y - mu) on X.
VectorXd update_beta(const Dataset& data, const VectorXd& mu);

/// Full objective ||Y - mu - X*beta||^2 + sum_i p_lambda(|mu_i|).
double objective(const Dataset& data, const VectorXd& mu, const VectorXd& beta,
                 const Penalty& penalty);

/// Profiled objective sum_i rho(Y_i - x_i'beta; lambda); identical to
/// objective() evaluated at mu = update_mu(beta) under the Soft penalty.
double profiled_loss(const Dataset& data, const VectorXd& beta, double lambda);

/**
 * @brief Alternating minimization over (mu, beta).
 *
 * Starting from beta_init, repeats mu <- threshold(Y - X*beta) and
 * beta <- OLS(Y - mu) until the coefficient step moves less than tol or
 * max_iter passes run out. The returned mu is re-thresholded at the final
 * beta, so active_set always corresponds to the reported coefficients.
 */
FitResult fit(const Dataset& data, const Penalty& penalty,
              const SolverConfig& config = {});

struct KktReport {
  double stationarity = 0.0;      // ||beta - OLS(Y - mu)||_inf
  double active_residual = 0.0;   // active rows: |Y_i - mu_i - x_i'beta - lambda*sgn(mu_i)|
  double inactive_margin = 0.0;   // inactive rows: (|Y_i - x_i'beta| - lambda)_+
  bool pass = false;
};

/// First-order optimality check for Soft-penalty results.
/// Throws WrongPenaltyKind when `result` came from a Hard fit.
KktReport kkt_check(const Dataset& data, const FitResult& result,
                    double lambda, double tol);

/// Fixed-point map beta - OLS(Y - mu(beta)) with the Soft-penalty mu(beta);
/// zero exactly at stationary points.
VectorXd z_function(const Dataset& data, const VectorXd& beta, double lambda);

}  // namespace increg
