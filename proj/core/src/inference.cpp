#include "increg/inference.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "increg/linalg.hpp"
#include "increg/stats.hpp"

namespace increg {

namespace {

constexpr double kEigenFloor = 1e-12;

Eigen::SelfAdjointEigenSolver<MatrixXd> decompose(const MatrixXd& S) {
  if (S.rows() != S.cols() || S.rows() < 1) {
    throw DimensionMismatch("symmetric decomposition: matrix must be square");
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(S);
  if (es.info() != Eigen::Success) {
    throw SingularGram("symmetric decomposition failed");
  }
  return es;
}

double scaled_norm_statistic(double raw, double sigma_hat) {
  if (sigma_hat > 0.0) return raw / sigma_hat;
  return raw == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ConfigError("alpha must lie in (0, 1)");
  }
}

}  // namespace

MatrixXd inverse_spd(const MatrixXd& S) {
  const auto es = decompose(S);
  VectorXd inv = es.eigenvalues();
  for (Eigen::Index i = 0; i < inv.size(); ++i) {
    if (inv(i) < kEigenFloor) {
      throw SingularGram("second-moment matrix is numerically singular "
                         "(eigenvalue " + std::to_string(inv(i)) + ")");
    }
    inv(i) = 1.0 / inv(i);
  }
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

MatrixXd sym_sqrt(const MatrixXd& S) {
  const auto es = decompose(S);
  VectorXd root = es.eigenvalues();
  for (Eigen::Index i = 0; i < root.size(); ++i) {
    root(i) = root(i) > 0.0 ? std::sqrt(root(i)) : 0.0;
  }
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().transpose();
}

MatrixXd sym_inv_sqrt(const MatrixXd& S) {
  const auto es = decompose(S);
  VectorXd root = es.eigenvalues();
  for (Eigen::Index i = 0; i < root.size(); ++i) {
    if (root(i) < kEigenFloor) {
      throw SingularGram("matrix square root: eigenvalue " +
                         std::to_string(root(i)) + " below floor");
    }
    root(i) = 1.0 / std::sqrt(root(i));
  }
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().transpose();
}

TwoStepResult two_step_fit(const Dataset& data, const FitResult& first_stage,
                           bool df_correct) {
  data.validate();
  if (first_stage.mu.size() != data.n()) {
    throw DimensionMismatch("two_step_fit: first stage does not match data");
  }

  TwoStepResult out;
  out.n = data.n();
  out.selected = complement(first_stage.active_set, data.n());
  out.m = static_cast<Eigen::Index>(out.selected.size());
  if (out.m <= data.d()) {
    throw EmptySubset("two_step_fit: only " + std::to_string(out.m) +
                      " rows have a zero intercept; need more than d=" +
                      std::to_string(data.d()));
  }
  const Dataset sub = subset_rows(data, out.selected);
  out.beta_tilde = ols_solve(sub.X, sub.Y);
  const double rss = (sub.Y - sub.X * out.beta_tilde).squaredNorm();
  const double denom =
      static_cast<double>(df_correct ? out.m - data.d() : out.m);
  out.sigma_hat = std::sqrt(rss / denom);
  out.gram_hat = sample_gram(data.X);
  return out;
}

ConfidenceInterval component_interval(const TwoStepResult& result,
                                      Eigen::Index j, double alpha,
                                      bool use_full_n) {
  check_alpha(alpha);
  if (j < 0 || j >= result.beta_tilde.size()) {
    throw DimensionMismatch("component_interval: index out of range");
  }
  const MatrixXd gram_inv = inverse_spd(result.gram_hat);
  const double scale =
      static_cast<double>(use_full_n ? result.n : result.m);
  const double z = stats::normal_quantile(1.0 - alpha / 2.0);
  const double half =
      z * result.sigma_hat * std::sqrt(gram_inv(j, j) / scale);
  return ConfidenceInterval{result.beta_tilde(j), half, 1.0 - alpha};
}

RegionTest chisq_region_test(const TwoStepResult& result,
                             const VectorXd& beta0, double alpha,
                             bool use_full_n) {
  check_alpha(alpha);
  if (beta0.size() != result.beta_tilde.size()) {
    throw DimensionMismatch("chisq_region_test: beta0 length mismatch");
  }
  const double scale =
      std::sqrt(static_cast<double>(use_full_n ? result.n : result.m));
  const double raw =
      scale * (sym_sqrt(result.gram_hat) * (result.beta_tilde - beta0)).norm();
  RegionTest test;
  test.statistic = scaled_norm_statistic(raw, result.sigma_hat);
  test.threshold = stats::chi_upper_quantile(
      alpha, static_cast<double>(result.beta_tilde.size()));
  test.member = test.statistic <= test.threshold;
  return test;
}

RegionTest linear_map_region_test(const TwoStepResult& result,
                                  const MatrixXd& A, const VectorXd& beta0,
                                  double alpha, bool use_full_n) {
  check_alpha(alpha);
  const Eigen::Index q = A.rows();
  const Eigen::Index d = result.beta_tilde.size();
  if (A.cols() != d) {
    throw DimensionMismatch("linear_map_region_test: A has wrong column count");
  }
  if (q < 1 || q > d) {
    throw RankDeficientMap("linear_map_region_test: need 1 <= q <= d rows");
  }
  if (beta0.size() != q) {
    throw DimensionMismatch("linear_map_region_test: beta0 must have q entries");
  }
  Eigen::JacobiSVD<MatrixXd> svd(A);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(q - 1);
  if (smax == 0.0 || !(smin > kRankRatio * smax)) {
    throw RankDeficientMap("linear_map_region_test: A is not of full row rank");
  }

  MatrixXd g = A * inverse_spd(result.gram_hat) * A.transpose();
  g = ((g + g.transpose()) / 2.0).eval();
  const double scale =
      std::sqrt(static_cast<double>(use_full_n ? result.n : result.m));
  const double raw =
      scale *
      (sym_inv_sqrt(g) * (A * result.beta_tilde - beta0)).norm();
  RegionTest test;
  test.statistic = scaled_norm_statistic(raw, result.sigma_hat);
  test.threshold = stats::chi_upper_quantile(alpha, static_cast<double>(q));
  test.member = test.statistic <= test.threshold;
  return test;
}

VectorXd oracle_fit(const Dataset& data, const VectorXd& mu_true) {
  data.validate();
  if (mu_true.size() != data.n()) {
    throw DimensionMismatch("oracle_fit: mu_true length does not match n");
  }
  IndexSet clean;
  for (Eigen::Index i = 0; i < mu_true.size(); ++i) {
    if (mu_true(i) == 0.0) clean.push_back(i);
  }
  if (clean.empty()) {
    throw EmptySubset("oracle_fit: no rows with zero true intercept");
  }
  Dataset adjusted{data.X, data.Y - mu_true};
  return subset_ols(adjusted, clean);
}

bool partial_selection_event(const FitResult& result, const VectorXd& mu_true,
                             double s1_threshold) {
  if (!(s1_threshold > 0.0)) {
    throw ConfigError("partial_selection_event: threshold must be positive");
  }
  if (result.mu.size() != mu_true.size()) {
    throw DimensionMismatch("partial_selection_event: length mismatch");
  }
  for (Eigen::Index i = 0; i < mu_true.size(); ++i) {
    const bool large = std::abs(mu_true(i)) > s1_threshold;
    const bool active = result.mu(i) != 0.0;
    if (large != active) return false;
  }
  return true;
}

}  // namespace increg
