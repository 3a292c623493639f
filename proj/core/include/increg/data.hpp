#pragma once

#include <vector>

#include <Eigen/Dense>

#include "increg/errors.hpp"

namespace increg {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Strictly increasing, duplicate-free row indices into a Dataset.
using IndexSet = std::vector<Eigen::Index>;

/// A regression sample: responses Y (length n) and design X (n by d).
struct Dataset {
  MatrixXd X;
  VectorXd Y;

  Eigen::Index n() const { return X.rows(); }
  Eigen::Index d() const { return X.cols(); }

  /// Throws DimensionMismatch unless n >= 1, d >= 1, n > d, Y matches X,
  /// and every entry is finite.
  void validate() const;
};

/// Throws DimensionMismatch unless `set` is strictly increasing within [0, n).
void validate_index_set(const IndexSet& set, Eigen::Index n);

/// Rows of [0, n) not present in `set` (which must validate against n).
IndexSet complement(const IndexSet& set, Eigen::Index n);

/// Copies the given rows into a new Dataset. Throws EmptySubset when `rows`
/// is empty.
Dataset subset_rows(const Dataset& data, const IndexSet& rows);

}  // namespace increg
