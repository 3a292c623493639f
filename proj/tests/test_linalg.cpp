#include <cmath>

#include "doctest.h"

#include "increg/data.hpp"
#include "increg/errors.hpp"
#include "increg/linalg.hpp"

using namespace increg;

namespace {

// 4x2 design whose normal equations are easy to solve by hand:
// X'X = [[6, 0], [0, 6]], X'y = [6, 12] -> beta = (1, 2).
Dataset hand_dataset() {
  Dataset data;
  data.X.resize(4, 2);
  data.X << 1.0, 1.0,
            2.0, 0.0,
            0.0, 2.0,
           -1.0, 1.0;
  data.Y.resize(4);
  data.Y << 3.0, 2.0, 4.0, 1.0;
  return data;
}

}  // namespace

TEST_CASE("ols_solve reproduces the hand-solved normal equations") {
  const Dataset data = hand_dataset();
  const VectorXd beta = ols_solve(data.X, data.Y);
  CHECK(beta(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(beta(1) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("LeastSquaresSolver can be reused across right-hand sides") {
  const Dataset data = hand_dataset();
  const LeastSquaresSolver solver(data.X);
  CHECK(solver.rows() == 4);
  CHECK(solver.cols() == 2);
  const VectorXd b1 = solver.solve(data.Y);
  CHECK(b1(0) == doctest::Approx(1.0).epsilon(1e-12));
  const VectorXd b2 = solver.solve(VectorXd::Zero(4));
  CHECK(b2.norm() == doctest::Approx(0.0));
  CHECK(solver.smallest_singular_value() > 0.0);
  CHECK(solver.largest_singular_value() >=
        solver.smallest_singular_value());
}

TEST_CASE("exact recovery on a consistent system") {
  MatrixXd X(5, 2);
  X << 1, 0, 0, 1, 1, 1, 2, -1, 3, 4;
  VectorXd beta_true(2);
  beta_true << -2.0, 0.5;
  const VectorXd beta = ols_solve(X, X * beta_true);
  CHECK((beta - beta_true).norm() < 1e-12);
}

TEST_CASE("rank-deficient designs are rejected") {
  MatrixXd X(4, 2);
  X << 1, 2, 2, 4, 3, 6, 4, 8;  // second column is twice the first
  CHECK_THROWS_AS(LeastSquaresSolver{X}, SingularDesign);
  const VectorXd y = VectorXd::Ones(4);
  CHECK_THROWS_AS(ols_solve(X, y), SingularDesign);
}

TEST_CASE("mismatched right-hand side is rejected") {
  const Dataset data = hand_dataset();
  const LeastSquaresSolver solver(data.X);
  CHECK_THROWS_AS(solver.solve(VectorXd::Zero(3)), DimensionMismatch);
}

TEST_CASE("subset_ols fits only the requested rows") {
  const Dataset data = hand_dataset();
  const IndexSet rows{0, 1, 2};
  const VectorXd beta = subset_ols(data, rows);
  // Hand solution on the first three rows: X'X = [[5,1],[1,5]],
  // X'y = [7, 11] -> beta = (1, 2).
  CHECK(beta(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(beta(1) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(subset_ols(data, IndexSet{}), EmptySubset);
}

TEST_CASE("sample_gram is X'X over n and exactly symmetric") {
  const Dataset data = hand_dataset();
  const MatrixXd gram = sample_gram(data.X);
  CHECK(gram(0, 0) == doctest::Approx(6.0 / 4.0).epsilon(1e-14));
  CHECK(gram(0, 1) == 0.0);
  CHECK(gram(1, 1) == doctest::Approx(6.0 / 4.0).epsilon(1e-14));
  CHECK(gram(0, 1) == gram(1, 0));
}

TEST_CASE("index set helpers validate and complement") {
  CHECK_THROWS_AS(validate_index_set(IndexSet{1, 1}, 4), DimensionMismatch);
  CHECK_THROWS_AS(validate_index_set(IndexSet{2, 1}, 4), DimensionMismatch);
  CHECK_THROWS_AS(validate_index_set(IndexSet{0, 4}, 4), DimensionMismatch);
  const IndexSet rest = complement(IndexSet{1, 3}, 5);
  REQUIRE(rest.size() == 3);
  CHECK(rest[0] == 0);
  CHECK(rest[1] == 2);
  CHECK(rest[2] == 4);
}

TEST_CASE("subset_rows copies the selected rows in order") {
  const Dataset data = hand_dataset();
  const Dataset sub = subset_rows(data, IndexSet{1, 3});
  REQUIRE(sub.n() == 2);
  CHECK(sub.X(0, 0) == 2.0);
  CHECK(sub.X(1, 0) == -1.0);
  CHECK(sub.Y(0) == 2.0);
  CHECK(sub.Y(1) == 1.0);
}

TEST_CASE("dataset validation rejects bad shapes and non-finite entries") {
  Dataset data = hand_dataset();
  data.Y.resize(3);
  CHECK_THROWS_AS(data.validate(), DimensionMismatch);
  data = hand_dataset();
  data.X(2, 1) = std::nan("");
  CHECK_THROWS_AS(data.validate(), DimensionMismatch);
  Dataset square;
  square.X = MatrixXd::Identity(2, 2);
  square.Y = VectorXd::Ones(2);
  CHECK_THROWS_AS(square.validate(), DimensionMismatch);  // needs n > d
}
