#include "increg/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "increg/inference.hpp"
#include "increg/linalg.hpp"
#include "increg/parallel.hpp"

namespace increg {

void MuMechanism::validate() const {
  const bool probs_ok = p0 >= 0.0 && p1 >= 0.0 && p2 >= 0.0 &&
                        std::abs(p0 + p1 + p2 - 1.0) <= 1e-12;
  if (!probs_ok) {
    throw ConfigError("mu mechanism: branch probabilities must be "
                      "nonnegative and sum to 1");
  }
  if (!(c >= 0.0) || !std::isfinite(c)) {
    throw ConfigError("mu mechanism: c must be a nonnegative real");
  }
  if (!(p_w >= 0.0 && p_w <= 1.0)) {
    throw ConfigError("mu mechanism: p_w must lie in [0, 1]");
  }
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw ConfigError("mu mechanism: tau must be positive");
  }
}

VectorXd gen_incidental(const MuMechanism& mech, Eigen::Index n, Rng& rng) {
  mech.validate();
  if (n < 1) throw ConfigError("gen_incidental: n must be positive");
  VectorXd mu(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double u = rng.uniform();
    if (u <= mech.p0) {
      mu(i) = 0.0;
    } else if (u <= mech.p0 + mech.p1) {
      const double sign = rng.uniform() <= mech.p_w ? 1.0 : -1.0;
      mu(i) = sign * (mech.c + rng.exponential(mech.tau));
    } else {
      mu(i) = mech.c * (2.0 * rng.uniform() - 1.0);
    }
  }
  return mu;
}

const char* method_name(Method method) {
  switch (method) {
    case Method::Oracle: return "oracle";
    case Method::Ols: return "ols";
    case Method::Lad: return "lad";
    case Method::SoftPls: return "soft";
    case Method::HardPls: return "hard";
    case Method::SoftTwoStep: return "soft_two_step";
    case Method::HardTwoStep: return "hard_two_step";
    case Method::SoftPractical: return "soft_practical";
    case Method::HardPractical: return "hard_practical";
  }
  throw ConfigError("unknown method enumerator");
}

Method method_from_name(const std::string& name) {
  static constexpr Method all[] = {
      Method::Oracle,       Method::Ols,         Method::Lad,
      Method::SoftPls,      Method::HardPls,     Method::SoftTwoStep,
      Method::HardTwoStep,  Method::SoftPractical, Method::HardPractical};
  for (Method m : all) {
    if (name == method_name(m)) return m;
  }
  throw ConfigError("unknown method '" + name + "'");
}

bool method_uses_grid(Method method) {
  return method == Method::SoftPls || method == Method::HardPls ||
         method == Method::SoftTwoStep || method == Method::HardTwoStep;
}

namespace {

bool method_uses_hard_grid(Method method) {
  return method == Method::HardPls || method == Method::HardTwoStep;
}

}  // namespace

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
  if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi)) {
    throw ConfigError("log_grid: need 0 < lo < hi");
  }
  if (points < 2) throw ConfigError("log_grid: need at least 2 points");
  const double log_lo = std::log(lo);
  const double log_hi = std::log(hi);
  std::vector<double> grid(points);
  for (std::size_t k = 0; k < points; ++k) {
    grid[k] = std::exp(log_lo + (log_hi - log_lo) * static_cast<double>(k) /
                                    static_cast<double>(points - 1));
  }
  return grid;
}

namespace {

void check_grid(const std::vector<double>& grid, const char* label) {
  if (grid.empty()) {
    throw ConfigError(std::string("experiment config: ") + label +
                      " grid required by the configured methods");
  }
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!(grid[k] > 0.0) || !std::isfinite(grid[k])) {
      throw ConfigError(std::string("experiment config: ") + label +
                        " grid entries must be positive reals");
    }
    if (k > 0 && !(grid[k] > grid[k - 1])) {
      throw ConfigError(std::string("experiment config: ") + label +
                        " grid must be strictly increasing");
    }
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  if (d < 1 || n <= d) {
    throw ConfigError("experiment config: need n > d >= 1");
  }
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw ConfigError("experiment config: sigma must be a nonnegative real");
  }
  if (beta_star.size() != 0 && beta_star.size() != d) {
    throw ConfigError("experiment config: beta_star must have d entries");
  }
  if (beta_star.size() != 0 && !beta_star.allFinite()) {
    throw ConfigError("experiment config: beta_star must be finite");
  }
  if (x_cov.size() != 0) {
    if (x_cov.rows() != d || x_cov.cols() != d || !x_cov.allFinite()) {
      throw ConfigError("experiment config: x_cov must be a finite d x d "
                        "matrix");
    }
    const double scale = std::max(1.0, x_cov.cwiseAbs().maxCoeff());
    if ((x_cov - x_cov.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
      throw ConfigError("experiment config: x_cov must be symmetric");
    }
    const Eigen::SelfAdjointEigenSolver<MatrixXd> es(x_cov);
    if (es.info() != Eigen::Success ||
        es.eigenvalues().minCoeff() < -1e-10 * scale) {
      throw ConfigError("experiment config: x_cov must be positive "
                        "semidefinite");
    }
  }
  if (mu_fixed && mu_seed) {
    throw ConfigError("experiment config: mu_fixed and mu_seed are mutually "
                      "exclusive");
  }
  if (mu_fixed) {
    if (mu_fixed->size() != n || !mu_fixed->allFinite()) {
      throw ConfigError("experiment config: mu_fixed must be a finite vector "
                        "of length n");
    }
  } else {
    mu.validate();
  }
  if (reps < 1) throw ConfigError("experiment config: reps must be positive");

  bool seen[16] = {};
  bool needs_hard = false;
  bool needs_soft = false;
  for (Method m : methods) {
    const auto slot = static_cast<std::size_t>(m);
    if (seen[slot]) {
      throw ConfigError(std::string("experiment config: duplicate method '") +
                        method_name(m) + "'");
    }
    seen[slot] = true;
    if (method_uses_grid(m)) {
      (method_uses_hard_grid(m) ? needs_hard : needs_soft) = true;
    }
  }
  if (needs_hard) check_grid(hard_grid, "hard");
  if (needs_soft) check_grid(soft_grid, "soft");
  selection.validate();
}

VectorXd ExperimentConfig::resolved_beta() const {
  if (beta_star.size() != 0) return beta_star;
  return VectorXd::Ones(d);
}

MatrixXd ExperimentConfig::resolved_x_cov() const {
  if (x_cov.size() != 0) return x_cov;
  return MatrixXd::Identity(d, d);
}

std::optional<VectorXd> ExperimentConfig::resolved_mu_fixed() const {
  if (mu_fixed) return mu_fixed;
  if (mu_seed) {
    Rng rng(derive_stream(*mu_seed, 0));
    return gen_incidental(mu, n, rng);
  }
  return std::nullopt;
}

Replicate gen_dataset(const ExperimentConfig& config, std::size_t rep) {
  config.validate();
  Replicate out;
  out.rep_master = derive_stream(config.seed, rep);
  Rng rng(derive_stream(out.rep_master, 0));

  if (auto frozen = config.resolved_mu_fixed()) {
    out.mu_true = std::move(*frozen);
  } else {
    out.mu_true = gen_incidental(config.mu, config.n, rng);
  }

  MatrixXd X(config.n, config.d);
  for (Eigen::Index i = 0; i < config.n; ++i) {
    for (Eigen::Index j = 0; j < config.d; ++j) {
      X(i, j) = rng.normal();
    }
  }
  const MatrixXd cov = config.resolved_x_cov();
  bool isotropic = true;
  for (Eigen::Index i = 0; i < cov.rows() && isotropic; ++i) {
    for (Eigen::Index j = 0; j < cov.cols() && isotropic; ++j) {
      isotropic = cov(i, j) == (i == j ? cov(0, 0) : 0.0);
    }
  }
  if (isotropic) {
    X *= std::sqrt(cov(0, 0));
  } else {
    X = (X * sym_sqrt(cov)).eval();
  }

  VectorXd eps(config.n);
  for (Eigen::Index i = 0; i < config.n; ++i) eps(i) = rng.normal();
  eps *= config.sigma;

  VectorXd Y = out.mu_true + X * config.resolved_beta();
  Y += eps;
  out.data = Dataset{std::move(X), std::move(Y)};
  return out;
}

LadResult lad_fit(const Dataset& data) {
  constexpr double kResidualFloor = 1e-6;
  constexpr double kObjectiveTol = 1e-8;
  constexpr std::size_t kMaxIter = 200;

  data.validate();
  LadResult out;
  out.beta = ols_solve(data.X, data.Y);
  double obj = (data.Y - data.X * out.beta).cwiseAbs().sum();
  for (std::size_t it = 0; it < kMaxIter; ++it) {
    const VectorXd r = data.Y - data.X * out.beta;
    VectorXd sw(r.size());
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      sw(i) = 1.0 / std::sqrt(std::max(std::abs(r(i)), kResidualFloor));
    }
    const MatrixXd Xw = data.X.array().colwise() * sw.array();
    out.beta = LeastSquaresSolver(Xw).solve(data.Y.cwiseProduct(sw));
    const double obj_new = (data.Y - data.X * out.beta).cwiseAbs().sum();
    const bool settled =
        std::abs(obj - obj_new) <= kObjectiveTol * (1.0 + std::abs(obj_new));
    obj = obj_new;
    if (settled) {
      out.converged = true;
      break;
    }
  }
  return out;
}

namespace {

constexpr std::size_t kMaxFailureMessages = 20;

void note_failure(std::vector<std::string>& messages, std::size_t rep,
                  const std::string& what) {
  if (messages.size() < kMaxFailureMessages) {
    messages.push_back("replicate " + std::to_string(rep) + ": " + what);
  }
}

double binomial_se(std::size_t hits, std::size_t used) {
  if (used == 0) return 0.0;
  const double p = static_cast<double>(hits) / static_cast<double>(used);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(used));
}

struct RepEstimates {
  std::vector<VectorXd> cells;
  std::vector<std::string> method_error;  // empty string = success
  std::vector<double> selected_lambda;
};

}  // namespace

RmseReport rmse_experiment(const ExperimentConfig& config,
                           std::size_t threads) {
  config.validate();
  if (config.methods.empty()) {
    throw ConfigError("rmse experiment: no methods configured");
  }

  const VectorXd beta_star = config.resolved_beta();
  const std::size_t n_methods = config.methods.size();

  std::vector<std::size_t> offset(n_methods);
  std::vector<std::size_t> cell_count(n_methods);
  std::size_t total_cells = 0;
  for (std::size_t m = 0; m < n_methods; ++m) {
    const Method method = config.methods[m];
    offset[m] = total_cells;
    cell_count[m] =
        method_uses_grid(method)
            ? (method_uses_hard_grid(method) ? config.hard_grid.size()
                                             : config.soft_grid.size())
            : 1;
    total_cells += cell_count[m];
  }

  const bool wants_hard_practical =
      std::count(config.methods.begin(), config.methods.end(),
                 Method::HardPractical) > 0;
  const bool wants_soft_practical =
      std::count(config.methods.begin(), config.methods.end(),
                 Method::SoftPractical) > 0;

  std::vector<RepEstimates> slots(config.reps);
  auto body = [&](std::size_t rep) {
    RepEstimates& slot = slots[rep];
    slot.cells.assign(total_cells, VectorXd());
    slot.method_error.assign(n_methods, "");
    slot.selected_lambda.assign(n_methods, kNoLambda);

    const Replicate r = gen_dataset(config, rep);

    // The practical selections share one derived stream and always consume
    // it in hard-then-soft order, independent of the methods ordering.
    Rng procedure_rng(derive_stream(r.rep_master, 1));
    std::optional<LambdaSelection> hard_selection;
    std::optional<LambdaSelection> soft_selection;
    std::string hard_selection_error;
    std::string soft_selection_error;
    if (wants_hard_practical) {
      try {
        hard_selection = data_driven_lambda(r.data, PenaltyKind::Hard,
                                            config.selection, procedure_rng);
      } catch (const std::exception& e) {
        hard_selection_error = e.what();
      }
    }
    if (wants_soft_practical) {
      try {
        soft_selection = data_driven_lambda(r.data, PenaltyKind::Soft,
                                            config.selection, procedure_rng);
      } catch (const std::exception& e) {
        soft_selection_error = e.what();
      }
    }

    for (std::size_t m = 0; m < n_methods; ++m) {
      const Method method = config.methods[m];
      VectorXd* cell = &slot.cells[offset[m]];
      try {
        switch (method) {
          case Method::Oracle:
            *cell = oracle_fit(r.data, r.mu_true);
            break;
          case Method::Ols:
            *cell = ols_solve(r.data.X, r.data.Y);
            break;
          case Method::Lad:
            *cell = lad_fit(r.data).beta;
            break;
          case Method::SoftPls:
          case Method::HardPls:
          case Method::SoftTwoStep:
          case Method::HardTwoStep: {
            const bool hard = method_uses_hard_grid(method);
            const auto& grid = hard ? config.hard_grid : config.soft_grid;
            const auto kind = hard ? PenaltyKind::Hard : PenaltyKind::Soft;
            const bool two_step = method == Method::SoftTwoStep ||
                                  method == Method::HardTwoStep;
            for (std::size_t k = 0; k < grid.size(); ++k) {
              const FitResult fr = fit(r.data, Penalty{kind, grid[k]});
              cell[k] = two_step ? two_step_fit(r.data, fr).beta_tilde
                                 : fr.beta;
            }
            break;
          }
          case Method::SoftPractical:
          case Method::HardPractical: {
            const bool hard = method == Method::HardPractical;
            const auto& err =
                hard ? hard_selection_error : soft_selection_error;
            if (!err.empty()) throw NumericError(err);
            const auto& sel = hard ? hard_selection : soft_selection;
            const auto kind = hard ? PenaltyKind::Hard : PenaltyKind::Soft;
            slot.selected_lambda[m] = sel->lambda_opt;
            *cell = fit(r.data, Penalty{kind, sel->lambda_opt}).beta;
            break;
          }
        }
      } catch (const std::exception& e) {
        slot.method_error[m] = e.what();
      }
    }
  };

  const auto task_failures =
      run_indexed_tasks(config.reps, resolve_thread_count(threads), body);

  RmseReport report;
  report.reps = config.reps;

  std::vector<std::string> rep_error(config.reps);
  for (const TaskFailure& f : task_failures) rep_error[f.index] = f.message;

  for (std::size_t rep = 0; rep < config.reps; ++rep) {
    bool failed = !rep_error[rep].empty();
    if (failed) {
      note_failure(report.failure_messages, rep, rep_error[rep]);
    } else {
      for (std::size_t m = 0; m < n_methods; ++m) {
        const std::string& err = slots[rep].method_error[m];
        if (!err.empty()) {
          failed = true;
          note_failure(report.failure_messages, rep,
                       std::string(method_name(config.methods[m])) + ": " +
                           err);
        }
      }
    }
    if (failed) ++report.failed_reps;
  }

  for (std::size_t m = 0; m < n_methods; ++m) {
    const Method method = config.methods[m];
    const std::size_t cells = cell_count[m];

    MatrixXd sum_err = MatrixXd::Zero(cells, config.d);
    MatrixXd sum_sq = MatrixXd::Zero(cells, config.d);
    VectorXd sum_full = VectorXd::Zero(cells);
    double sum_lambda = 0.0;
    std::size_t used = 0;
    for (std::size_t rep = 0; rep < config.reps; ++rep) {
      if (!rep_error[rep].empty() || !slots[rep].method_error[m].empty()) {
        continue;
      }
      ++used;
      for (std::size_t k = 0; k < cells; ++k) {
        const VectorXd err = slots[rep].cells[offset[m] + k] - beta_star;
        sum_err.row(k) += err.transpose();
        sum_sq.row(k) += err.cwiseAbs2().transpose();
        sum_full(k) += err.squaredNorm();
      }
      if (!std::isnan(slots[rep].selected_lambda[m])) {
        sum_lambda += slots[rep].selected_lambda[m];
      }
    }

    MethodReport mr;
    mr.method = method;
    mr.used = used;
    const double denom = used > 0 ? static_cast<double>(used) : 1.0;
    mr.bias_by_lambda = sum_err / denom;
    mr.rmse_by_lambda = (sum_sq / denom).cwiseSqrt();
    mr.rmse_full_curve.resize(cells);
    for (std::size_t k = 0; k < cells; ++k) {
      mr.rmse_full_curve[k] = std::sqrt(sum_full(k) / denom);
      if (mr.rmse_full_curve[k] < mr.rmse_full_curve[mr.best_index]) {
        mr.best_index = k;
      }
    }
    if (method_uses_grid(method)) {
      mr.lambda_grid = method_uses_hard_grid(method) ? config.hard_grid
                                                     : config.soft_grid;
      mr.best_lambda = mr.lambda_grid[mr.best_index];
    }
    if (method == Method::SoftPractical || method == Method::HardPractical) {
      mr.mean_selected_lambda = used > 0 ? sum_lambda / denom : kNoLambda;
    }
    report.methods.push_back(std::move(mr));
  }
  return report;
}

CoverageReport coverage_experiment(const ExperimentConfig& config,
                                   const CoverageParams& params,
                                   std::size_t threads) {
  config.validate();
  if (params.cells.empty()) {
    throw ConfigError("coverage experiment: no (p1, p2) cells configured");
  }
  if (!(params.alpha > 0.0 && params.alpha < 1.0)) {
    throw ConfigError("coverage experiment: alpha must lie in (0, 1)");
  }
  if (params.component < 0 || params.component >= config.d) {
    throw ConfigError("coverage experiment: component out of range");
  }
  if (config.mu_fixed || config.mu_seed) {
    throw ConfigError("coverage experiment: cells redraw the intercepts, "
                      "frozen mu is not supported");
  }

  const VectorXd beta_star = config.resolved_beta();
  const double truth = beta_star(params.component);
  const std::size_t workers = resolve_thread_count(threads);

  struct Slot {
    double lambda = kNoLambda;
    int covered = -1;  // -1 failed, else 0/1
    std::string error;
  };

  CoverageReport report;
  report.alpha = params.alpha;
  for (const auto& [p1, p2] : params.cells) {
    ExperimentConfig cell_config = config;
    cell_config.mu.p1 = p1;
    cell_config.mu.p2 = p2;
    cell_config.mu.p0 = 1.0 - p1 - p2;
    cell_config.mu.validate();

    std::vector<Slot> slots(config.reps);
    auto body = [&](std::size_t rep) {
      Slot& slot = slots[rep];
      const Replicate r = gen_dataset(cell_config, rep);
      const double lambda = ci_lambda(r.data, config.selection);
      slot.lambda = lambda;
      const FitResult fr =
          fit(r.data, Penalty{PenaltyKind::Soft, lambda});
      const TwoStepResult ts = two_step_fit(r.data, fr);
      const ConfidenceInterval ci =
          component_interval(ts, params.component, params.alpha);
      slot.covered = ci.contains(truth) ? 1 : 0;
    };
    const auto task_failures =
        run_indexed_tasks(config.reps, workers, body);
    for (const TaskFailure& f : task_failures) {
      slots[f.index].error = f.message;
    }

    CoverageCell cell;
    cell.p1 = p1;
    cell.p2 = p2;
    cell.reps = config.reps;
    std::size_t hits = 0;
    double lambda_sum = 0.0;
    std::size_t lambda_used = 0;
    for (std::size_t rep = 0; rep < config.reps; ++rep) {
      const Slot& slot = slots[rep];
      if (!std::isnan(slot.lambda)) {
        lambda_sum += slot.lambda;
        ++lambda_used;
      }
      if (slot.covered < 0) {
        ++report.failed_reps;
        note_failure(report.failure_messages, rep, slot.error);
        continue;
      }
      ++cell.used;
      hits += static_cast<std::size_t>(slot.covered);
    }
    cell.coverage = cell.used > 0
                        ? static_cast<double>(hits) /
                              static_cast<double>(cell.used)
                        : 0.0;
    cell.mc_se = binomial_se(hits, cell.used);
    cell.mean_lambda =
        lambda_used > 0 ? lambda_sum / static_cast<double>(lambda_used) : 0.0;
    report.cells.push_back(cell);
  }
  return report;
}

QqReport qq_experiment(const ExperimentConfig& config, const QqParams& params,
                       std::size_t threads) {
  config.validate();
  if (!(params.lambda > 0.0)) {
    throw ConfigError("qq experiment: lambda must be positive");
  }
  if (params.component < 0 || params.component >= config.d) {
    throw ConfigError("qq experiment: component out of range");
  }

  const VectorXd beta_star = config.resolved_beta();
  const double truth = beta_star(params.component);

  struct Slot {
    double t_two_step = 0.0;
    double t_penalized = 0.0;
    bool ok = false;
    std::string error;
  };
  std::vector<Slot> slots(config.reps);
  auto body = [&](std::size_t rep) {
    const Replicate r = gen_dataset(config, rep);
    const FitResult fr =
        fit(r.data, Penalty{PenaltyKind::Soft, params.lambda});
    const TwoStepResult ts = two_step_fit(r.data, fr);
    const MatrixXd gram_inv = inverse_spd(ts.gram_hat);
    const double denom =
        ts.sigma_hat * std::sqrt(gram_inv(params.component, params.component));
    if (!(denom > 0.0)) {
      throw NumericError("qq experiment: degenerate standardization scale");
    }
    const double root_m = std::sqrt(static_cast<double>(ts.m));
    Slot& slot = slots[rep];
    slot.t_two_step =
        root_m * (ts.beta_tilde(params.component) - truth) / denom;
    slot.t_penalized = root_m * (fr.beta(params.component) - truth) / denom;
    slot.ok = true;
  };
  const auto task_failures =
      run_indexed_tasks(config.reps, resolve_thread_count(threads), body);
  for (const TaskFailure& f : task_failures) {
    slots[f.index].error = f.message;
  }

  QqReport report;
  report.reps = config.reps;
  for (std::size_t rep = 0; rep < config.reps; ++rep) {
    const Slot& slot = slots[rep];
    if (!slot.ok) {
      ++report.failed_reps;
      note_failure(report.failure_messages, rep, slot.error);
      continue;
    }
    report.t_two_step.push_back(slot.t_two_step);
    report.t_penalized.push_back(slot.t_penalized);
  }
  report.used = report.t_two_step.size();
  std::sort(report.t_two_step.begin(), report.t_two_step.end());
  std::sort(report.t_penalized.begin(), report.t_penalized.end());
  report.ks_two_step = stats::ks_test_standard_normal(report.t_two_step);
  report.ks_penalized = stats::ks_test_standard_normal(report.t_penalized);
  return report;
}

SelectionReport selection_experiment(const ExperimentConfig& config,
                                     const SelectionParams& params,
                                     std::size_t threads) {
  config.validate();
  if (!(params.lambda > 0.0)) {
    throw ConfigError("selection experiment: lambda must be positive");
  }
  const double threshold =
      std::isnan(params.threshold) ? params.lambda : params.threshold;
  if (!(threshold > 0.0)) {
    throw ConfigError("selection experiment: threshold must be positive");
  }

  struct Slot {
    int hit = -1;
    std::string error;
  };
  std::vector<Slot> slots(config.reps);
  auto body = [&](std::size_t rep) {
    const Replicate r = gen_dataset(config, rep);
    const FitResult fr =
        fit(r.data, Penalty{params.kind, params.lambda});
    slots[rep].hit =
        partial_selection_event(fr, r.mu_true, threshold) ? 1 : 0;
  };
  const auto task_failures =
      run_indexed_tasks(config.reps, resolve_thread_count(threads), body);
  for (const TaskFailure& f : task_failures) {
    slots[f.index].error = f.message;
  }

  SelectionReport report;
  report.reps = config.reps;
  report.lambda = params.lambda;
  report.threshold = threshold;
  for (std::size_t rep = 0; rep < config.reps; ++rep) {
    const Slot& slot = slots[rep];
    if (slot.hit < 0) {
      ++report.failed_reps;
      note_failure(report.failure_messages, rep, slot.error);
      continue;
    }
    ++report.used;
    report.hits += static_cast<std::size_t>(slot.hit);
  }
  report.frequency =
      report.used > 0
          ? static_cast<double>(report.hits) / static_cast<double>(report.used)
          : 0.0;
  report.mc_se = binomial_se(report.hits, report.used);
  return report;
}

}  // namespace increg
