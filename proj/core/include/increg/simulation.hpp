#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "increg/data.hpp"
#include "increg/lambda_select.hpp"
#include "increg/penalized.hpp"
#include "increg/rng.hpp"
#include "increg/stats.hpp"

namespace increg {

/// Three-branch mixture for the per-observation intercepts.
struct MuMechanism {
  double p0 = 0.8;   // exact zero
  double p1 = 0.1;   // signed shift: sign * (c + Exp(tau))
  double p2 = 0.1;   // Uniform[-c, c]
  double c = 3.0;
  double p_w = 0.75;  // probability the shifted branch is positive
  double tau = 1.0;   // mean of the exponential part

  void validate() const;
};

/// One entry per row. Draw protocol (part of the reproducibility contract):
/// one uniform u picks the branch by u <= p0, then u <= p0 + p1; the shifted
/// branch consumes one uniform for the sign and one for the exponential; the
/// uniform branch consumes one uniform mapped to c * (2u - 1).
VectorXd gen_incidental(const MuMechanism& mech, Eigen::Index n, Rng& rng);

enum class Method {
  Oracle,
  Ols,
  Lad,
  SoftPls,
  HardPls,
  SoftTwoStep,
  HardTwoStep,
  SoftPractical,
  HardPractical,
};

const char* method_name(Method method);
Method method_from_name(const std::string& name);
bool method_uses_grid(Method method);

/// points >= 2 values log-spaced over [lo, hi], endpoints included.
std::vector<double> log_grid(double lo, double hi, std::size_t points);

struct ExperimentConfig {
  Eigen::Index n = 200;
  Eigen::Index d = 2;
  VectorXd beta_star;  // empty means all ones
  double sigma = 1.0;
  MatrixXd x_cov;  // empty means identity
  MuMechanism mu;
  std::optional<VectorXd> mu_fixed;      // freeze the intercepts outright
  std::optional<std::uint64_t> mu_seed;  // or freeze one mechanism draw
  std::size_t reps = 1000;
  std::uint64_t seed = 0;
  std::vector<double> hard_grid;  // grids for the per-lambda methods
  std::vector<double> soft_grid;
  std::vector<Method> methods;
  LambdaProcedureConfig selection;  // used by the practical methods

  void validate() const;
  VectorXd resolved_beta() const;
  MatrixXd resolved_x_cov() const;
  std::optional<VectorXd> resolved_mu_fixed() const;
};

struct Replicate {
  Dataset data;
  VectorXd mu_true;
  std::uint64_t rep_master = 0;
};

/// Deterministic replicate generation. Streams: rep_master =
/// derive_stream(config.seed, rep); the data stream is
/// derive_stream(rep_master, 0); procedures needing extra randomness
/// (practical selection) draw from derive_stream(rep_master, 1).
/// Draw order within the data stream: intercepts (unless frozen), then X
/// row by row, then the noise vector.
Replicate gen_dataset(const ExperimentConfig& config, std::size_t rep);

struct LadResult {
  VectorXd beta;
  bool converged = false;
};

/// Least-absolute-deviation fit by iteratively reweighted least squares.
LadResult lad_fit(const Dataset& data);

constexpr double kNoLambda = std::numeric_limits<double>::quiet_NaN();

struct MethodReport {
  Method method = Method::Ols;
  std::vector<double> lambda_grid;  // empty for single-evaluation methods
  MatrixXd bias_by_lambda;          // grid points (or 1) x d
  MatrixXd rmse_by_lambda;
  std::vector<double> rmse_full_curve;  // full-vector RMSE per grid point
  std::size_t best_index = 0;           // argmin of rmse_full_curve
  double best_lambda = kNoLambda;
  double mean_selected_lambda = kNoLambda;  // practical methods only
  std::size_t used = 0;

  VectorXd bias() const {
    return bias_by_lambda.row(static_cast<Eigen::Index>(best_index))
        .transpose();
  }
  VectorXd rmse() const {
    return rmse_by_lambda.row(static_cast<Eigen::Index>(best_index))
        .transpose();
  }
  double rmse_full() const { return rmse_full_curve[best_index]; }
};

struct RmseReport {
  std::vector<MethodReport> methods;
  std::size_t reps = 0;
  std::size_t failed_reps = 0;
  std::vector<std::string> failure_messages;  // capped sample
};

/// Per-replicate estimates for every configured method; grid methods are
/// evaluated at every grid point and summarized at the best one. A replicate
/// contributes to a method only if every evaluation for that method
/// succeeded. threads = 0 means automatic.
RmseReport rmse_experiment(const ExperimentConfig& config,
                           std::size_t threads = 0);

struct CoverageParams {
  std::vector<std::pair<double, double>> cells;  // (p1, p2)
  double alpha = 0.05;
  Eigen::Index component = 0;
};

struct CoverageCell {
  double p1 = 0.0;
  double p2 = 0.0;
  double coverage = 0.0;  // fraction of used replicates covering the truth
  double mc_se = 0.0;
  double mean_lambda = 0.0;
  std::size_t used = 0;
  std::size_t reps = 0;
};

struct CoverageReport {
  std::vector<CoverageCell> cells;
  double alpha = 0.05;
  std::size_t failed_reps = 0;  // across all cells
  std::vector<std::string> failure_messages;
};

/// Per cell: the base mechanism with (p1, p2) replaced and p0 = 1 - p1 - p2,
/// interval for one component via the six-sigma selection rule, Soft fit,
/// two-step refit, and containment of the true coefficient.
CoverageReport coverage_experiment(const ExperimentConfig& config,
                                   const CoverageParams& params,
                                   std::size_t threads = 0);

struct QqParams {
  double lambda = 3.0;
  Eigen::Index component = 0;
};

struct QqReport {
  std::vector<double> t_two_step;   // sorted standardized two-step estimates
  std::vector<double> t_penalized;  // same scaling applied to the first stage
  stats::KsResult ks_two_step;
  stats::KsResult ks_penalized;
  std::size_t used = 0;
  std::size_t reps = 0;
  std::size_t failed_reps = 0;
  std::vector<std::string> failure_messages;
};

/// Standardized draws sqrt(m) (estimate_j - beta*_j) / (sigma_hat *
/// sqrt((gram_hat^{-1})_jj)) for the two-step and first-stage estimators,
/// with one-sample KS tests against N(0, 1).
QqReport qq_experiment(const ExperimentConfig& config, const QqParams& params,
                       std::size_t threads = 0);

struct SelectionParams {
  double lambda = 3.0;
  double threshold = kNoLambda;  // defaults to lambda
  PenaltyKind kind = PenaltyKind::Soft;
};

struct SelectionReport {
  double frequency = 0.0;
  double mc_se = 0.0;
  double lambda = 0.0;
  double threshold = 0.0;
  std::size_t hits = 0;
  std::size_t used = 0;
  std::size_t reps = 0;
  std::size_t failed_reps = 0;
  std::vector<std::string> failure_messages;
};

/// Frequency of the exact-recovery event: the fit flags precisely the rows
/// with |mu*_i| > threshold as active.
SelectionReport selection_experiment(const ExperimentConfig& config,
                                     const SelectionParams& params,
                                     std::size_t threads = 0);

}  // namespace increg
