#pragma once

#include <Eigen/Dense>

#include "increg/data.hpp"

namespace increg {

/// Smallest-to-largest singular value ratio below which a matrix is treated
/// as rank deficient.
inline constexpr double kRankRatio = 1e-10;

/**
 * @brief Least-squares solver with the design factored once.
 *
 * Householder QR of X, reused across right-hand sides. Construction throws
 * SingularDesign when X has fewer rows than columns or its smallest singular
 * value falls below kRankRatio times the largest.
 */
class LeastSquaresSolver {
 public:
  explicit LeastSquaresSolver(const MatrixXd& X);

  VectorXd solve(const VectorXd& rhs) const;

  Eigen::Index rows() const { return n_; }
  Eigen::Index cols() const { return d_; }
  double smallest_singular_value() const { return smin_; }
  double largest_singular_value() const { return smax_; }

 private:
  Eigen::HouseholderQR<MatrixXd> qr_;
  Eigen::Index n_ = 0;
  Eigen::Index d_ = 0;
  double smin_ = 0.0;
  double smax_ = 0.0;
};

/// Ordinary least squares coefficients of y on X.
VectorXd ols_solve(const MatrixXd& X, const VectorXd& y);

/// OLS restricted to the given rows. Throws EmptySubset when `rows` is empty
/// and SingularDesign when the restricted design is rank deficient.
VectorXd subset_ols(const Dataset& data, const IndexSet& rows);

/// Sample second-moment matrix X'X / n, exactly symmetrized.
MatrixXd sample_gram(const MatrixXd& X);

}  // namespace increg
