#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "doctest.h"

#include "increg/errors.hpp"
#include "increg/linalg.hpp"
#include "increg/rng.hpp"
#include "increg/simulation.hpp"

using namespace increg;

TEST_CASE("gen_incidental reproduces frozen draws") {
  Rng rng(derive_stream(317, 0));
  const VectorXd mu = gen_incidental(MuMechanism{}, 12, rng);
  for (Eigen::Index i : {0, 1, 2, 4, 5, 7, 8, 10, 11}) {
    CHECK(mu(i) == 0.0);
  }
  CHECK(mu(3) == doctest::Approx(3.1213142788501993).epsilon(1e-14));
  CHECK(mu(6) == doctest::Approx(7.9733213569670847).epsilon(1e-14));
  CHECK(mu(9) == doctest::Approx(3.5932418808669508).epsilon(1e-14));

  Rng rng200(derive_stream(317, 0));
  const VectorXd mu200 = gen_incidental(MuMechanism{}, 200, rng200);
  int nonzero = 0;
  for (Eigen::Index i = 0; i < 200; ++i) nonzero += mu200(i) != 0.0;
  CHECK(nonzero == 42);
  // The first 12 entries coincide because the stream is read in order.
  for (Eigen::Index i = 0; i < 12; ++i) CHECK(mu200(i) == mu(i));
}

TEST_CASE("gen_incidental honors the mixture shape") {
  MuMechanism mech{0.5, 0.3, 0.2, 3.0, 1.0, 1.0};
  Rng rng(99);
  const Eigen::Index n = 40000;
  const VectorXd mu = gen_incidental(mech, n, rng);
  int zero = 0, shifted = 0, uniform = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double v = std::abs(mu(i));
    if (v == 0.0) {
      ++zero;
    } else if (v >= mech.c) {
      ++shifted;
      CHECK(mu(i) > 0.0);  // p_w = 1 forces the positive sign
    } else {
      ++uniform;
      CHECK(v < mech.c);
    }
  }
  const double N = static_cast<double>(n);
  CHECK(zero / N == doctest::Approx(0.5).epsilon(0.02));
  CHECK(shifted / N == doctest::Approx(0.3).epsilon(0.03));
  CHECK(uniform / N == doctest::Approx(0.2).epsilon(0.04));
}

TEST_CASE("mechanism validation") {
  MuMechanism mech;
  CHECK_NOTHROW(mech.validate());
  mech.p0 = 0.9;
  CHECK_THROWS_AS(mech.validate(), ConfigError);  // probabilities sum to 1.1
  mech = MuMechanism{};
  mech.p_w = 1.5;
  CHECK_THROWS_AS(mech.validate(), ConfigError);
  mech = MuMechanism{};
  mech.tau = 0.0;
  CHECK_THROWS_AS(mech.validate(), ConfigError);
  mech = MuMechanism{};
  mech.c = -1.0;
  CHECK_THROWS_AS(mech.validate(), ConfigError);
  Rng rng(1);
  CHECK_THROWS_AS(gen_incidental(MuMechanism{}, 0, rng), ConfigError);
}

TEST_CASE("method names round trip") {
  const Method all[] = {Method::Oracle,       Method::Ols,
                        Method::Lad,          Method::SoftPls,
                        Method::HardPls,      Method::SoftTwoStep,
                        Method::HardTwoStep,  Method::SoftPractical,
                        Method::HardPractical};
  for (Method m : all) {
    CHECK(method_from_name(method_name(m)) == m);
  }
  CHECK(std::string(method_name(Method::SoftPls)) == "soft");
  CHECK(std::string(method_name(Method::HardTwoStep)) == "hard_two_step");
  CHECK_THROWS_AS(method_from_name("ridge"), ConfigError);
  CHECK(method_uses_grid(Method::SoftPls));
  CHECK(method_uses_grid(Method::HardTwoStep));
  CHECK_FALSE(method_uses_grid(Method::Ols));
  CHECK_FALSE(method_uses_grid(Method::SoftPractical));
}

TEST_CASE("log_grid spans the requested interval") {
  const std::vector<double> grid = log_grid(0.25, 6.0, 40);
  REQUIRE(grid.size() == 40);
  CHECK(grid.front() == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(grid.back() == doctest::Approx(6.0).epsilon(1e-14));
  for (std::size_t k = 1; k < grid.size(); ++k) {
    CHECK(grid[k] > grid[k - 1]);
    // Log spacing means a constant ratio.
    CHECK(grid[k] / grid[k - 1] ==
          doctest::Approx(grid[1] / grid[0]).epsilon(1e-12));
  }
  CHECK_THROWS_AS(log_grid(0.0, 6.0, 40), ConfigError);
  CHECK_THROWS_AS(log_grid(2.0, 1.0, 40), ConfigError);
  CHECK_THROWS_AS(log_grid(0.25, 6.0, 1), ConfigError);
}

TEST_CASE("replicate generation reproduces frozen entries") {
  ExperimentConfig config;
  config.n = 8;
  config.d = 2;
  config.x_cov = 225.0 * MatrixXd::Identity(2, 2);
  config.seed = 5;
  const Replicate rep = gen_dataset(config, 2);
  CHECK(rep.rep_master == 0x3b92d3f0106bc147ULL);
  CHECK(rep.data.X(0, 0) ==
        doctest::Approx(27.78398060479212).epsilon(1e-14));
  CHECK(rep.data.X(0, 1) ==
        doctest::Approx(17.005591249683587).epsilon(1e-14));
  CHECK(rep.data.Y(0) ==
        doctest::Approx(42.606389998588917).epsilon(1e-14));
  CHECK(rep.mu_true(0) ==
        doctest::Approx(-1.2491083708655377).epsilon(1e-14));
  Rng proc(derive_stream(rep.rep_master, 1));
  CHECK(proc.uniform() == 0.34307195801303547);

  // Same inputs, same replicate; a different index, a different one.
  const Replicate again = gen_dataset(config, 2);
  CHECK((again.data.X - rep.data.X).norm() == 0.0);
  CHECK((again.data.Y - rep.data.Y).norm() == 0.0);
  const Replicate other = gen_dataset(config, 3);
  CHECK((other.data.Y - rep.data.Y).norm() > 0.0);
}

TEST_CASE("frozen intercepts are shared across replicates") {
  ExperimentConfig config;
  config.n = 30;
  config.d = 2;
  config.seed = 11;
  config.mu_seed = 317;
  const Replicate a = gen_dataset(config, 0);
  const Replicate b = gen_dataset(config, 7);
  CHECK((a.mu_true - b.mu_true).norm() == 0.0);
  CHECK((a.data.Y - b.data.Y).norm() > 0.0);

  // The frozen vector is one mechanism draw from the dedicated stream.
  Rng rng(derive_stream(317, 0));
  const VectorXd direct = gen_incidental(config.mu, 30, rng);
  CHECK((a.mu_true - direct).norm() == 0.0);

  ExperimentConfig fixed = config;
  fixed.mu_seed.reset();
  fixed.mu_fixed = direct;
  const Replicate c = gen_dataset(fixed, 0);
  CHECK((c.mu_true - direct).norm() == 0.0);
}

TEST_CASE("experiment config validation") {
  ExperimentConfig config;
  config.methods = {Method::Ols};
  CHECK_NOTHROW(config.validate());

  config.n = 2;
  config.d = 2;
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config = ExperimentConfig{};
  config.beta_star = VectorXd::Ones(3);
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config = ExperimentConfig{};
  config.x_cov.resize(2, 2);
  config.x_cov << 1.0, 0.5, 0.4, 1.0;
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config = ExperimentConfig{};
  config.mu_fixed = VectorXd::Zero(200);
  config.mu_seed = 1;
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config = ExperimentConfig{};
  config.mu_fixed = VectorXd::Zero(10);
  CHECK_THROWS_AS(config.validate(), ConfigError);  // length != n
  config = ExperimentConfig{};
  config.methods = {Method::Ols, Method::Ols};
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config = ExperimentConfig{};
  config.methods = {Method::SoftPls};
  CHECK_THROWS_AS(config.validate(), ConfigError);  // missing soft grid
  config.soft_grid = {1.0, 2.0};
  CHECK_NOTHROW(config.validate());
  config.methods.push_back(Method::HardTwoStep);
  CHECK_THROWS_AS(config.validate(), ConfigError);  // missing hard grid
  config.hard_grid = {2.0, 1.0};
  CHECK_THROWS_AS(config.validate(), ConfigError);  // not increasing
  config.hard_grid = {1.0, 2.0};
  CHECK_NOTHROW(config.validate());
  config = ExperimentConfig{};
  config.reps = 0;
  CHECK_THROWS_AS(config.validate(), ConfigError);
}

TEST_CASE("lad_fit recovers a median and beats OLS in absolute loss") {
  Dataset constant;
  constant.X = MatrixXd::Ones(5, 1);
  constant.Y.resize(5);
  constant.Y << 1.0, 2.0, 3.0, 4.0, 100.0;
  const LadResult lad = lad_fit(constant);
  CHECK(lad.converged);
  CHECK(lad.beta(0) == doctest::Approx(3.0).epsilon(1e-6));

  Dataset line;
  line.X.resize(7, 2);
  for (Eigen::Index i = 0; i < 7; ++i) {
    line.X(i, 0) = 1.0;
    line.X(i, 1) = static_cast<double>(i);
  }
  line.Y.resize(7);
  line.Y << 0.0, 1.1, 1.9, 3.2, 4.0, 40.0, 6.1;
  const LadResult robust = lad_fit(line);
  const VectorXd ols = ols_solve(line.X, line.Y);
  const double lad_obj = (line.Y - line.X * robust.beta).cwiseAbs().sum();
  const double ols_obj = (line.Y - line.X * ols).cwiseAbs().sum();
  CHECK(lad_obj <= ols_obj + 1e-9);
}

TEST_CASE("rmse experiment summarizes grids and respects bias <= rmse") {
  ExperimentConfig config;
  config.n = 60;
  config.d = 2;
  config.seed = 404;
  config.reps = 25;
  config.methods = {Method::Oracle, Method::Ols, Method::SoftPls,
                    Method::SoftTwoStep};
  config.soft_grid = log_grid(0.5, 4.0, 6);
  const RmseReport report = rmse_experiment(config);
  REQUIRE(report.methods.size() == 4);
  CHECK(report.reps == 25);
  CHECK(report.failed_reps == 0);
  for (const MethodReport& mr : report.methods) {
    CHECK(mr.used == 25);
    const Eigen::Index rows = method_uses_grid(mr.method) ? 6 : 1;
    CHECK(mr.bias_by_lambda.rows() == rows);
    CHECK(mr.rmse_by_lambda.rows() == rows);
    CHECK(static_cast<Eigen::Index>(mr.rmse_full_curve.size()) == rows);
    for (Eigen::Index k = 0; k < rows; ++k) {
      for (Eigen::Index j = 0; j < 2; ++j) {
        CHECK(mr.rmse_by_lambda(k, j) >=
              std::abs(mr.bias_by_lambda(k, j)) - 1e-12);
      }
    }
    std::size_t arg = 0;
    for (std::size_t k = 0; k < mr.rmse_full_curve.size(); ++k) {
      if (mr.rmse_full_curve[k] < mr.rmse_full_curve[arg]) arg = k;
    }
    CHECK(mr.best_index == arg);
    if (method_uses_grid(mr.method)) {
      CHECK(mr.lambda_grid.size() == 6);
      CHECK(mr.best_lambda == mr.lambda_grid[mr.best_index]);
      CHECK(std::isnan(mr.mean_selected_lambda));
    } else {
      CHECK(std::isnan(mr.best_lambda));
    }
    CHECK(mr.bias().size() == 2);
    CHECK(mr.rmse().size() == 2);
    CHECK(mr.rmse_full() == mr.rmse_full_curve[mr.best_index]);
  }
}

TEST_CASE("rmse experiment results do not depend on the thread count") {
  ExperimentConfig config;
  config.n = 50;
  config.d = 2;
  config.seed = 31;
  config.reps = 16;
  config.methods = {Method::Ols, Method::SoftPls, Method::SoftPractical};
  config.soft_grid = log_grid(0.5, 3.0, 4);
  const RmseReport a = rmse_experiment(config, 1);
  const RmseReport b = rmse_experiment(config, 4);
  REQUIRE(a.methods.size() == b.methods.size());
  for (std::size_t m = 0; m < a.methods.size(); ++m) {
    CHECK((a.methods[m].bias_by_lambda - b.methods[m].bias_by_lambda)
              .norm() == 0.0);
    CHECK((a.methods[m].rmse_by_lambda - b.methods[m].rmse_by_lambda)
              .norm() == 0.0);
    if (a.methods[m].method == Method::SoftPractical) {
      CHECK(a.methods[m].mean_selected_lambda ==
            b.methods[m].mean_selected_lambda);
      CHECK_FALSE(std::isnan(a.methods[m].mean_selected_lambda));
    }
  }
}

TEST_CASE("selection frequency is one when nothing should be selected") {
  ExperimentConfig config;
  config.n = 50;
  config.d = 2;
  config.seed = 12;
  config.reps = 20;
  config.mu = MuMechanism{1.0, 0.0, 0.0, 3.0, 0.75, 1.0};
  SelectionParams params;
  params.lambda = 6.0;
  const SelectionReport report = selection_experiment(config, params);
  CHECK(report.reps == 20);
  CHECK(report.used == 20);
  CHECK(report.hits == 20);
  CHECK(report.frequency == 1.0);
  CHECK(report.mc_se == 0.0);
  CHECK(report.lambda == 6.0);
  CHECK(report.threshold == 6.0);  // defaults to lambda
}

TEST_CASE("qq experiment standardizes both stages") {
  ExperimentConfig config;
  config.n = 120;
  config.d = 2;
  config.seed = 9;
  config.reps = 60;
  config.x_cov = 225.0 * MatrixXd::Identity(2, 2);
  config.mu = MuMechanism{0.94, 0.05, 0.01, 5.0, 0.75, 1.0};
  QqParams params;
  params.lambda = 3.0;
  const QqReport report = qq_experiment(config, params);
  CHECK(report.reps == 60);
  CHECK(report.used + report.failed_reps == 60);
  REQUIRE(report.t_two_step.size() == report.used);
  REQUIRE(report.t_penalized.size() == report.used);
  CHECK(std::is_sorted(report.t_two_step.begin(), report.t_two_step.end()));
  CHECK(std::is_sorted(report.t_penalized.begin(),
                       report.t_penalized.end()));
  CHECK(report.ks_two_step.statistic > 0.0);
  CHECK(report.ks_two_step.p_value > 0.0);
  CHECK(report.ks_penalized.statistic > 0.0);
}

TEST_CASE("coverage experiment tracks one cell per mechanism") {
  ExperimentConfig config;
  config.n = 80;
  config.d = 2;
  config.seed = 5;
  config.reps = 30;
  config.x_cov = 225.0 * MatrixXd::Identity(2, 2);
  config.mu = MuMechanism{0.98, 0.01, 0.01, 5.0, 0.75, 1.0};
  CoverageParams params;
  params.cells = {{0.01, 0.01}, {0.10, 0.05}};
  const CoverageReport report = coverage_experiment(config, params);
  REQUIRE(report.cells.size() == 2);
  for (const CoverageCell& cell : report.cells) {
    CHECK(cell.reps == 30);
    CHECK(cell.used <= 30);
    CHECK(cell.coverage >= 0.0);
    CHECK(cell.coverage <= 1.0);
    CHECK(cell.mean_lambda > 0.0);
  }
  CHECK(report.cells[0].p1 == 0.01);
  CHECK(report.cells[1].p2 == 0.05);
}
