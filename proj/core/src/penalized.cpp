#include "increg/penalized.hpp"

#include <cmath>
#include <string>

#include "increg/linalg.hpp"

namespace increg {

void Penalty::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ConfigError("Penalty: lambda must be positive and finite");
  }
}

double soft_threshold(double v, double lambda) noexcept {
  const double a = std::abs(v) - lambda;
  if (a <= 0.0) return 0.0;
  return v > 0.0 ? a : -a;
}

double hard_threshold(double v, double lambda) noexcept {
  return std::abs(v) > lambda ? v : 0.0;
}

double penalty_value(double t, const Penalty& penalty) noexcept {
  const double a = std::abs(t);
  if (penalty.kind == PenaltyKind::Soft) {
    return 2.0 * penalty.lambda * a;
  }
  const double l = penalty.lambda;
  return a < l ? l * l - (a - l) * (a - l) : l * l;
}

double huber_rho(double x, double lambda) noexcept {
  const double a = std::abs(x);
  return a <= lambda ? x * x : 2.0 * lambda * a - lambda * lambda;
}

void SolverConfig::validate(Eigen::Index d) const {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw ConfigError("SolverConfig: tol must be positive and finite");
  }
  if (max_iter < 1) {
    throw ConfigError("SolverConfig: max_iter must be at least 1");
  }
  if (beta_init.size() != 0 && beta_init.size() != d) {
    throw DimensionMismatch("SolverConfig: beta_init has length " +
                            std::to_string(beta_init.size()) +
                            ", expected " + std::to_string(d));
  }
}

namespace {

VectorXd threshold_residuals(const Dataset& data, const VectorXd& beta,
                             const Penalty& penalty) {
  VectorXd r = data.Y - data.X * beta;
  if (penalty.kind == PenaltyKind::Soft) {
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      r(i) = soft_threshold(r(i), penalty.lambda);
    }
  } else {
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      r(i) = hard_threshold(r(i), penalty.lambda);
    }
  }
  return r;
}

IndexSet nonzero_rows(const VectorXd& mu) {
  IndexSet active;
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    if (mu(i) != 0.0) active.push_back(i);
  }
  return active;
}

}  // namespace

VectorXd update_mu(const Dataset& data, const VectorXd& beta,
                   const Penalty& penalty) {
  data.validate();
  penalty.validate();
  if (beta.size() != data.d()) {
    throw DimensionMismatch("update_mu: beta length does not match d");
  }
  return threshold_residuals(data, beta, penalty);
}

VectorXd update_beta(const Dataset& data, const VectorXd& mu) {
  data.validate();
  if (mu.size() != data.n()) {
    throw DimensionMismatch("update_beta: mu length does not match n");
  }
  return ols_solve(data.X, data.Y - mu);
}

double objective(const Dataset& data, const VectorXd& mu, const VectorXd& beta,
                 const Penalty& penalty) {
  data.validate();
  penalty.validate();
  if (mu.size() != data.n() || beta.size() != data.d()) {
    throw DimensionMismatch("objective: argument lengths do not match data");
  }
  const double loss = (data.Y - mu - data.X * beta).squaredNorm();
  double pen = 0.0;
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    pen += penalty_value(mu(i), penalty);
  }
  return loss + pen;
}

double profiled_loss(const Dataset& data, const VectorXd& beta,
                     double lambda) {
  data.validate();
  if (!(lambda > 0.0)) {
    throw ConfigError("profiled_loss: lambda must be positive");
  }
  if (beta.size() != data.d()) {
    throw DimensionMismatch("profiled_loss: beta length does not match d");
  }
  const VectorXd r = data.Y - data.X * beta;
  double s = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    s += huber_rho(r(i), lambda);
  }
  return s;
}

FitResult fit(const Dataset& data, const Penalty& penalty,
              const SolverConfig& config) {
  data.validate();
  penalty.validate();
  config.validate(data.d());

  const LeastSquaresSolver solver(data.X);

  FitResult out;
  out.penalty = penalty;
  VectorXd beta = config.beta_init.size() == data.d()
                      ? config.beta_init
                      : VectorXd::Zero(data.d());
  out.trace.reserve(config.max_iter);
  for (std::size_t k = 0; k < config.max_iter; ++k) {
    const VectorXd mu = threshold_residuals(data, beta, penalty);
    const VectorXd beta_next = solver.solve(data.Y - mu);
    const double step = (beta_next - beta).norm();
    out.trace.push_back(step);
    beta = beta_next;
    ++out.iterations;
    if (step <= config.tol) {
      out.converged = true;
      break;
    }
  }
  out.beta = beta;
  out.mu = threshold_residuals(data, beta, penalty);
  out.active_set = nonzero_rows(out.mu);
  out.objective = objective(data, out.mu, out.beta, penalty);
  return out;
}

KktReport kkt_check(const Dataset& data, const FitResult& result,
                    double lambda, double tol) {
  data.validate();
  if (result.penalty.kind != PenaltyKind::Soft) {
    throw WrongPenaltyKind("kkt_check: only Soft-penalty fits have these "
                           "first-order conditions");
  }
  if (!(lambda > 0.0) || !(tol > 0.0)) {
    throw ConfigError("kkt_check: lambda and tol must be positive");
  }
  if (result.beta.size() != data.d() || result.mu.size() != data.n()) {
    throw DimensionMismatch("kkt_check: result does not match data shapes");
  }

  KktReport report;
  const VectorXd beta_ls = ols_solve(data.X, data.Y - result.mu);
  report.stationarity = (result.beta - beta_ls).lpNorm<Eigen::Infinity>();

  const VectorXd fitted = data.X * result.beta;
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    if (result.mu(i) != 0.0) {
      const double sign = result.mu(i) > 0.0 ? 1.0 : -1.0;
      const double gap =
          std::abs(data.Y(i) - result.mu(i) - fitted(i) - lambda * sign);
      report.active_residual = std::max(report.active_residual, gap);
    } else {
      const double margin = std::abs(data.Y(i) - fitted(i)) - lambda;
      report.inactive_margin = std::max(report.inactive_margin,
                                        std::max(margin, 0.0));
    }
  }
  report.pass = report.stationarity <= tol && report.active_residual <= tol &&
                report.inactive_margin <= tol;
  return report;
}

VectorXd z_function(const Dataset& data, const VectorXd& beta, double lambda) {
  const Penalty soft{PenaltyKind::Soft, lambda};
  const VectorXd mu = update_mu(data, beta, soft);
  return beta - ols_solve(data.X, data.Y - mu);
}

}  // namespace increg
