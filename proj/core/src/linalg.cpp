#include "increg/linalg.hpp"

#include <string>

namespace increg {

void Dataset::validate() const {
  if (X.rows() < 1 || X.cols() < 1) {
    throw DimensionMismatch("Dataset: X must be non-empty");
  }
  if (Y.size() != X.rows()) {
    throw DimensionMismatch("Dataset: Y has " + std::to_string(Y.size()) +
                            " entries but X has " + std::to_string(X.rows()) +
                            " rows");
  }
  if (X.rows() <= X.cols()) {
    throw DimensionMismatch("Dataset: need n > d, got n=" +
                            std::to_string(X.rows()) +
                            " d=" + std::to_string(X.cols()));
  }
  if (!X.allFinite() || !Y.allFinite()) {
    throw DimensionMismatch("Dataset: entries must be finite");
  }
}

void validate_index_set(const IndexSet& set, Eigen::Index n) {
  Eigen::Index prev = -1;
  for (Eigen::Index idx : set) {
    if (idx < 0 || idx >= n) {
      throw DimensionMismatch("index set: entry " + std::to_string(idx) +
                              " outside [0, " + std::to_string(n) + ")");
    }
    if (idx <= prev) {
      throw DimensionMismatch("index set: entries must be strictly increasing");
    }
    prev = idx;
  }
}

IndexSet complement(const IndexSet& set, Eigen::Index n) {
  validate_index_set(set, n);
  IndexSet out;
  out.reserve(static_cast<std::size_t>(n) - set.size());
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (k < set.size() && set[k] == i) {
      ++k;
    } else {
      out.push_back(i);
    }
  }
  return out;
}

Dataset subset_rows(const Dataset& data, const IndexSet& rows) {
  validate_index_set(rows, data.n());
  if (rows.empty()) {
    throw EmptySubset("subset_rows: empty row set");
  }
  Dataset out;
  out.X.resize(static_cast<Eigen::Index>(rows.size()), data.d());
  out.Y.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    out.X.row(static_cast<Eigen::Index>(k)) = data.X.row(rows[k]);
    out.Y(static_cast<Eigen::Index>(k)) = data.Y(rows[k]);
  }
  return out;
}

LeastSquaresSolver::LeastSquaresSolver(const MatrixXd& X)
    : qr_(X), n_(X.rows()), d_(X.cols()) {
  if (n_ < d_) {
    throw SingularDesign("least squares: fewer rows than columns (n=" +
                         std::to_string(n_) + ", d=" + std::to_string(d_) +
                         ")");
  }
  // Singular values of X equal those of the d x d triangular factor.
  const MatrixXd R = qr_.matrixQR()
                         .topRows(d_)
                         .triangularView<Eigen::Upper>();
  Eigen::JacobiSVD<MatrixXd> svd(R);
  smax_ = svd.singularValues()(0);
  smin_ = svd.singularValues()(d_ - 1);
  if (!(smin_ > kRankRatio * smax_) || smax_ == 0.0) {
    throw SingularDesign(
        "least squares: design is numerically rank deficient (sigma_min/"
        "sigma_max = " +
        std::to_string(smax_ > 0.0 ? smin_ / smax_ : 0.0) + ")");
  }
}

VectorXd LeastSquaresSolver::solve(const VectorXd& rhs) const {
  if (rhs.size() != n_) {
    throw DimensionMismatch("least squares: rhs length " +
                            std::to_string(rhs.size()) + " does not match n=" +
                            std::to_string(n_));
  }
  return qr_.solve(rhs);
}

VectorXd ols_solve(const MatrixXd& X, const VectorXd& y) {
  LeastSquaresSolver solver(X);
  return solver.solve(y);
}

VectorXd subset_ols(const Dataset& data, const IndexSet& rows) {
  data.validate();
  const Dataset sub = subset_rows(data, rows);
  return ols_solve(sub.X, sub.Y);
}

MatrixXd sample_gram(const MatrixXd& X) {
  if (X.rows() < 1) {
    throw DimensionMismatch("sample_gram: X must have rows");
  }
  MatrixXd g = (X.transpose() * X) / static_cast<double>(X.rows());
  g = ((g + g.transpose()) / 2.0).eval();
  return g;
}

}  // namespace increg
