#include "increg/lambda_select.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "increg/linalg.hpp"
#include "increg/rng.hpp"
#include "increg/stats.hpp"

namespace increg {

void LambdaProcedureConfig::validate() const {
  if (!(pure_fraction > 0.0 && pure_fraction < 1.0)) {
    throw ConfigError("lambda procedure: pure_fraction must lie in (0, 1)");
  }
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ConfigError("lambda procedure: test_fraction must lie in (0, 1)");
  }
  if (!(quantile_q > 0.0 && quantile_q <= 1.0)) {
    throw ConfigError("lambda procedure: quantile_q must lie in (0, 1]");
  }
  if (!(alpha_l > 0.0) || !(soft_lambda_l > 0.0)) {
    throw ConfigError("lambda procedure: lower-bound parameters must be "
                      "positive");
  }
  if (grid_size < 2) {
    throw ConfigError("lambda procedure: grid_size must be at least 2");
  }
}

SpecBounds gaussian_spec_bounds(std::size_t n, std::size_t d, double sigma,
                                double sigma_x, TailRegime regime) {
  if (n < 2 || d < 1) {
    throw ConfigError("gaussian_spec_bounds: need n >= 2 and d >= 1");
  }
  if (!(sigma > 0.0) || !(sigma_x > 0.0)) {
    throw ConfigError("gaussian_spec_bounds: scales must be positive");
  }
  const double ln_n = std::log(static_cast<double>(n));
  SpecBounds out;
  out.gamma_n = std::sqrt(2.0 * sigma * sigma * ln_n);
  out.kappa_n = regime == TailRegime::BoundedX
                    ? std::sqrt(static_cast<double>(d)) * sigma_x
                    : std::sqrt(2.0 * static_cast<double>(d) * sigma_x *
                                sigma_x * ln_n);
  return out;
}

namespace {

// Row indices ordered by |residual| ascending, ties broken by row index.
std::vector<Eigen::Index> order_by_abs(const VectorXd& r) {
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(r.size()));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
    return std::abs(r(a)) < std::abs(r(b));
  });
  return idx;
}

IndexSet sorted_prefix(const std::vector<Eigen::Index>& order, std::size_t k) {
  IndexSet out(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(out.begin(), out.end());
  return out;
}

struct PureSplit {
  VectorXd updated_residuals;           // after the pure-set OLS refit
  std::vector<Eigen::Index> pure_order; // pure rows, |residual| ascending
  std::size_t n_pure = 0;
};

// Steps 1 to 4: OLS residuals, pure set, refit, updated split.
PureSplit pure_residual_split(const Dataset& data,
                              const LambdaProcedureConfig& config) {
  data.validate();
  config.validate();
  const auto n = static_cast<std::size_t>(data.n());
  const auto n_pure = static_cast<std::size_t>(
      std::llround(config.pure_fraction * static_cast<double>(n)));
  if (n_pure <= static_cast<std::size_t>(data.d()) || n_pure < 2) {
    throw ConfigError("lambda procedure: pure set of " +
                      std::to_string(n_pure) + " rows is too small");
  }

  const VectorXd beta_full = ols_solve(data.X, data.Y);
  const VectorXd r1 = data.Y - data.X * beta_full;
  const auto order1 = order_by_abs(r1);

  const VectorXd beta_pure =
      subset_ols(data, sorted_prefix(order1, n_pure));
  PureSplit split;
  split.updated_residuals = data.Y - data.X * beta_pure;
  auto order2 = order_by_abs(split.updated_residuals);
  order2.resize(n_pure);
  split.pure_order = std::move(order2);
  split.n_pure = n_pure;
  return split;
}

double pure_residual_sd(const PureSplit& split) {
  std::vector<double> pure;
  pure.reserve(split.n_pure);
  for (Eigen::Index i : split.pure_order) {
    pure.push_back(split.updated_residuals(i));
  }
  return stats::sample_sd(pure);
}

}  // namespace

LambdaSelection data_driven_lambda(const Dataset& data, PenaltyKind kind,
                                   const LambdaProcedureConfig& config,
                                   Rng& rng) {
  PureSplit split = pure_residual_split(data, config);
  const auto n = static_cast<std::size_t>(data.n());

  // Grid bounds.
  std::vector<double> abs_r(n);
  for (std::size_t i = 0; i < n; ++i) {
    abs_r[i] = std::abs(split.updated_residuals(static_cast<Eigen::Index>(i)));
  }
  std::sort(abs_r.begin(), abs_r.end());
  const auto rank = static_cast<std::size_t>(std::max<long long>(
      1, static_cast<long long>(
             std::ceil(config.quantile_q * static_cast<double>(n)))));
  const double lambda_high = abs_r[rank - 1];
  if (!(lambda_high > 0.0) || !std::isfinite(lambda_high)) {
    throw DegenerateInterval("lambda procedure: upper grid bound is " +
                             std::to_string(lambda_high));
  }

  LambdaSelection sel;
  sel.lambda_high = lambda_high;
  sel.lambda_low = kind == PenaltyKind::Hard
                       ? config.alpha_l * pure_residual_sd(split)
                       : config.soft_lambda_l;
  if (!(sel.lambda_low < sel.lambda_high)) {
    sel.lambda_low = sel.lambda_high / 10.0;
    sel.clamped = true;
  }

  // Held-out rows: a seeded partial Fisher-Yates over the pure rows, kept in
  // their |residual| order so the draw is reproducible.
  const auto n_test = static_cast<std::size_t>(std::max<long long>(
      1, std::llround(config.test_fraction *
                      static_cast<double>(split.n_pure))));
  std::vector<Eigen::Index> pool = split.pure_order;
  for (std::size_t i = 0; i < n_test; ++i) {
    const std::size_t span = pool.size() - i;
    std::size_t offset =
        static_cast<std::size_t>(rng.uniform() * static_cast<double>(span));
    offset %= span;
    std::swap(pool[i], pool[i + offset]);
  }
  IndexSet test(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n_test));
  std::sort(test.begin(), test.end());
  const IndexSet train = complement(test, data.n());
  if (train.size() <= static_cast<std::size_t>(data.d())) {
    throw ConfigError("lambda procedure: training set too small");
  }
  const Dataset train_data = subset_rows(data, train);
  const Dataset test_data = subset_rows(data, test);

  // Grid search by held-out squared prediction error.
  const double log_lo = std::log(sel.lambda_low);
  const double log_hi = std::log(sel.lambda_high);
  const auto g = config.grid_size;
  sel.test_loss_curve.reserve(g);
  double best = 0.0;
  for (std::size_t k = 0; k < g; ++k) {
    const double lam = std::exp(
        log_lo + (log_hi - log_lo) * static_cast<double>(k) /
                     static_cast<double>(g - 1));
    const FitResult fr = fit(train_data, Penalty{kind, lam});
    const double loss =
        (test_data.Y - test_data.X * fr.beta).squaredNorm();
    sel.test_loss_curve.emplace_back(lam, loss);
    if (k == 0 || loss < best) {
      best = loss;
      sel.lambda_opt = lam;
    }
  }
  return sel;
}

LambdaSelection data_driven_lambda(const Dataset& data, PenaltyKind kind,
                                   const LambdaProcedureConfig& config) {
  Rng rng(derive_stream(config.seed, 0));
  return data_driven_lambda(data, kind, config, rng);
}

double ci_lambda(const Dataset& data, const LambdaProcedureConfig& config) {
  const PureSplit split = pure_residual_split(data, config);
  const double lambda = 6.0 * pure_residual_sd(split);
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DegenerateInterval("ci_lambda: pure residuals have zero spread");
  }
  return lambda;
}

}  // namespace increg
