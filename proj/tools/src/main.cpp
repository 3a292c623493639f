#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <system_error>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "increg/errors.hpp"
#include "increg/inference.hpp"
#include "increg/io.hpp"
#include "increg/lambda_select.hpp"
#include "increg/penalized.hpp"
#include "increg/simulation.hpp"

namespace {

using nlohmann::json;
using increg::io::format_double;

/// Written to <out>/run_record.json on every invocation that got as far as
/// resolving an output directory, success or not.
struct RunRecord {
  std::string command;
  json config = json::object();
  std::uint64_t seed = 0;
  std::vector<std::string> artifacts;
  std::string out_dir;
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();

  void write(const std::string& status) const {
    if (out_dir.empty()) return;
    try {
      std::error_code ec;
      std::filesystem::create_directories(out_dir, ec);
      if (ec) return;
      const double wall =
          std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                        start)
              .count();
      json rec;
      rec["schema"] = "increg.run_record.v1";
      rec["command"] = command;
      rec["config"] = config;
      rec["seed"] = seed;
      rec["artifacts"] = artifacts;
      rec["status"] = status;
      rec["wall_seconds"] = wall;
      increg::io::write_text_file(
          (std::filesystem::path(out_dir) / "run_record.json").string(),
          rec.dump(2) + "\n");
    } catch (...) {
    }
  }
};

increg::PenaltyKind kind_from_name(const std::string& name) {
  if (name == "soft") return increg::PenaltyKind::Soft;
  if (name == "hard") return increg::PenaltyKind::Hard;
  throw increg::ConfigError("--penalty must be 'soft' or 'hard'");
}

double parse_lambda_value(const std::string& text) {
  double value = 0.0;
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), last, value);
  if (text.empty() || ec != std::errc() || ptr != last || !(value > 0.0) ||
      !std::isfinite(value)) {
    throw increg::ConfigError(
        "--lambda must be a positive number or 'auto', got '" + text + "'");
  }
  return value;
}

std::string out_path(const std::string& dir, const char* name) {
  return (std::filesystem::path(dir) / name).string();
}

json vector_json(const increg::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

struct FitArgs {
  std::string input;
  std::string penalty = "soft";
  std::string lambda = "auto";
  double alpha = 0.05;
  std::uint64_t seed = 0;
  std::string out = "increg_out";
};

int run_fit(const FitArgs& args, RunRecord& rec) {
  rec.command = "fit";
  rec.out_dir = args.out;
  rec.seed = args.seed;
  rec.config = json{{"input", args.input},   {"penalty", args.penalty},
                    {"lambda", args.lambda}, {"alpha", args.alpha},
                    {"seed", args.seed},     {"out", args.out}};
  if (!(args.alpha > 0.0 && args.alpha < 1.0)) {
    throw increg::ConfigError("--alpha must be in (0, 1)");
  }
  const increg::PenaltyKind kind = kind_from_name(args.penalty);
  const increg::Dataset data = increg::io::read_csv(args.input);

  std::optional<increg::LambdaSelection> selection;
  double lambda = 0.0;
  if (args.lambda == "auto") {
    increg::LambdaProcedureConfig procedure;
    procedure.seed = args.seed;
    selection = increg::data_driven_lambda(data, kind, procedure);
    lambda = selection->lambda_opt;
  } else {
    lambda = parse_lambda_value(args.lambda);
  }

  const increg::FitResult fit =
      increg::fit(data, increg::Penalty{kind, lambda});

  json report;
  report["schema"] = "increg.fit.v1";
  report["penalty"] = args.penalty;
  report["lambda"] = lambda;
  report["lambda_rule"] = selection ? "auto" : "fixed";
  if (selection) {
    report["lambda_low"] = selection->lambda_low;
    report["lambda_high"] = selection->lambda_high;
    report["lambda_clamped"] = selection->clamped;
  }
  report["converged"] = fit.converged;
  report["iterations"] = fit.iterations;
  report["objective"] = fit.objective;
  report["beta_hat"] = vector_json(fit.beta);
  report["mu_nonzeros"] = fit.active_set.size();

  std::string two_step_error;
  try {
    const increg::TwoStepResult refit = increg::two_step_fit(data, fit);
    report["beta_tilde"] = vector_json(refit.beta_tilde);
    report["sigma_hat"] = refit.sigma_hat;
    report["rows_kept"] = refit.m;
    json intervals = json::array();
    for (Eigen::Index j = 0; j < data.d(); ++j) {
      const increg::ConfidenceInterval ci =
          increg::component_interval(refit, j, args.alpha);
      intervals.push_back(json{{"component", j},
                               {"center", ci.center},
                               {"half_width", ci.half_width},
                               {"lower", ci.lower()},
                               {"upper", ci.upper()},
                               {"level", ci.level}});
    }
    report["intervals"] = std::move(intervals);
  } catch (const increg::NumericError& e) {
    two_step_error = e.what();
    report["two_step_error"] = two_step_error;
  }

  std::error_code ec;
  std::filesystem::create_directories(args.out, ec);
  if (ec) {
    throw increg::Error("cannot create output directory '" + args.out +
                        "': " + ec.message());
  }
  const std::string fit_path = out_path(args.out, "fit.json");
  increg::io::write_text_file(fit_path, report.dump(2) + "\n");

  increg::io::Row header{"index", "value"};
  std::vector<increg::io::Row> rows;
  for (const Eigen::Index i : fit.active_set) {
    rows.push_back({std::to_string(i), format_double(fit.mu(i))});
  }
  const std::string mu_path = out_path(args.out, "mu_hat.tsv");
  increg::io::write_text_file(mu_path, increg::io::render_tsv(header, rows));
  rec.artifacts = {fit_path, mu_path};

  std::cout << "penalty=" << args.penalty
            << " lambda=" << format_double(lambda)
            << (selection ? " (auto)" : "")
            << " iterations=" << fit.iterations
            << " converged=" << (fit.converged ? "yes" : "no") << "\n";
  std::cout << "beta_hat:";
  for (Eigen::Index j = 0; j < fit.beta.size(); ++j) {
    std::cout << ' ' << format_double(fit.beta(j));
  }
  std::cout << "\nmu_hat nonzeros: " << fit.active_set.size() << " of "
            << data.n() << "\n";
  if (two_step_error.empty()) {
    std::cout << "two-step refit and intervals written to " << fit_path
              << "\n";
    return 0;
  }
  std::cerr << "error: two-step refit failed: " << two_step_error << "\n"
            << "hint: lower --lambda so that some rows are flagged clean\n";
  return 3;
}

struct ExperimentArgs {
  std::string suite;
  std::string config_path;
  std::string out = "increg_out";
  std::optional<std::uint64_t> seed;
  std::size_t threads = 0;
};

int run_experiment(const ExperimentArgs& args, RunRecord& rec) {
  rec.command = "experiment " + args.suite;
  rec.out_dir = args.out;
  rec.config = json{{"suite", args.suite},
                    {"config", args.config_path},
                    {"out", args.out},
                    {"threads", args.threads}};
  increg::io::LoadedConfig loaded =
      increg::io::load_config_file(args.config_path);
  if (args.seed) loaded.experiment.seed = *args.seed;
  rec.seed = loaded.experiment.seed;
  rec.config["seed"] = loaded.experiment.seed;
  const increg::ExperimentConfig& experiment = loaded.experiment;

  std::size_t total = experiment.reps;
  std::size_t failed = 0;
  std::vector<std::string> failures;
  if (args.suite == "rmse") {
    if (experiment.methods.empty()) {
      throw increg::ConfigError("config file lists no methods");
    }
    const increg::RmseReport report =
        increg::rmse_experiment(experiment, args.threads);
    failed = report.failed_reps;
    failures = report.failure_messages;
    rec.artifacts = increg::io::write_rmse_report(report, experiment, args.out);
    for (const increg::MethodReport& mr : report.methods) {
      std::cout << increg::method_name(mr.method) << ": rmse_full="
                << format_double(mr.rmse_full());
      if (!mr.lambda_grid.empty()) {
        std::cout << " best_lambda=" << format_double(mr.best_lambda);
      }
      if (!std::isnan(mr.mean_selected_lambda)) {
        std::cout << " mean_lambda="
                  << format_double(mr.mean_selected_lambda);
      }
      std::cout << " used=" << mr.used << "\n";
    }
  } else if (args.suite == "coverage") {
    if (!loaded.coverage) {
      throw increg::ConfigError("config file has no 'coverage' section");
    }
    const increg::CoverageReport report =
        increg::coverage_experiment(experiment, *loaded.coverage,
                                    args.threads);
    total = experiment.reps * loaded.coverage->cells.size();
    failed = report.failed_reps;
    failures = report.failure_messages;
    rec.artifacts =
        increg::io::write_coverage_report(report, experiment, args.out);
    for (const increg::CoverageCell& cell : report.cells) {
      std::cout << "p1=" << format_double(cell.p1)
                << " p2=" << format_double(cell.p2)
                << ": coverage=" << format_double(cell.coverage) << " (se "
                << format_double(cell.mc_se) << ") mean_lambda="
                << format_double(cell.mean_lambda) << " used=" << cell.used
                << "\n";
    }
  } else if (args.suite == "qq") {
    if (!loaded.qq) {
      throw increg::ConfigError("config file has no 'qq' section");
    }
    const increg::QqReport report =
        increg::qq_experiment(experiment, *loaded.qq, args.threads);
    failed = report.failed_reps;
    failures = report.failure_messages;
    rec.artifacts = increg::io::write_qq_report(report, experiment,
                                                *loaded.qq, args.out);
    std::cout << "two-step:  KS=" << format_double(report.ks_two_step.statistic)
              << " p=" << format_double(report.ks_two_step.p_value) << "\n";
    std::cout << "penalized: KS="
              << format_double(report.ks_penalized.statistic)
              << " p=" << format_double(report.ks_penalized.p_value) << "\n";
  } else {
    if (!loaded.selection) {
      throw increg::ConfigError("config file has no 'selection' section");
    }
    const increg::SelectionReport report =
        increg::selection_experiment(experiment, *loaded.selection,
                                     args.threads);
    failed = report.failed_reps;
    failures = report.failure_messages;
    rec.artifacts =
        increg::io::write_selection_report(report, experiment, args.out);
    std::cout << "recovery frequency=" << format_double(report.frequency)
              << " (se " << format_double(report.mc_se) << ") hits="
              << report.hits << "/" << report.used << "\n";
  }

  if (failed > 0) {
    std::cerr << failed << " of " << total << " replicates failed\n";
    for (const std::string& message : failures) {
      std::cerr << "  " << message << "\n";
    }
  }
  if (failed * 100 > total) {
    std::cerr << "error: more than 1% of replicates failed\n";
    return 3;
  }
  return 0;
}

struct SelectArgs {
  std::string input;
  std::string penalty = "soft";
  std::string rule = "grid";
  std::uint64_t seed = 0;
  std::string out = "increg_out";
};

int run_select_lambda(const SelectArgs& args, RunRecord& rec) {
  rec.command = "select-lambda";
  rec.out_dir = args.out;
  rec.seed = args.seed;
  rec.config = json{{"input", args.input},
                    {"penalty", args.penalty},
                    {"rule", args.rule},
                    {"seed", args.seed},
                    {"out", args.out}};
  const increg::PenaltyKind kind = kind_from_name(args.penalty);
  const increg::Dataset data = increg::io::read_csv(args.input);
  increg::LambdaProcedureConfig procedure;
  procedure.seed = args.seed;

  std::error_code ec;
  std::filesystem::create_directories(args.out, ec);
  if (ec) {
    throw increg::Error("cannot create output directory '" + args.out +
                        "': " + ec.message());
  }

  json summary;
  summary["schema"] = "increg.select_lambda.v1";
  summary["penalty"] = args.penalty;
  summary["rule"] = args.rule;
  summary["seed"] = args.seed;
  if (args.rule == "ci") {
    const double lambda = increg::ci_lambda(data, procedure);
    summary["lambda_opt"] = lambda;
    const std::string json_path = out_path(args.out, "select_lambda.json");
    increg::io::write_text_file(json_path, summary.dump(2) + "\n");
    rec.artifacts = {json_path};
    std::cout << "lambda = " << format_double(lambda)
              << " (six-sigma interval rule)\n";
    return 0;
  }

  const increg::LambdaSelection selection =
      increg::data_driven_lambda(data, kind, procedure);
  summary["lambda_opt"] = selection.lambda_opt;
  summary["lambda_low"] = selection.lambda_low;
  summary["lambda_high"] = selection.lambda_high;
  summary["lambda_clamped"] = selection.clamped;
  const std::string json_path = out_path(args.out, "select_lambda.json");
  increg::io::write_text_file(json_path, summary.dump(2) + "\n");

  increg::io::Row header{"lambda", "test_loss"};
  std::vector<increg::io::Row> rows;
  for (const auto& [lambda, loss] : selection.test_loss_curve) {
    rows.push_back({format_double(lambda), format_double(loss)});
  }
  const std::string curve_path = out_path(args.out, "lambda_curve.tsv");
  increg::io::write_text_file(curve_path,
                              increg::io::render_tsv(header, rows));
  rec.artifacts = {json_path, curve_path};

  std::cout << "lambda_opt = " << format_double(selection.lambda_opt)
            << " in [" << format_double(selection.lambda_low) << ", "
            << format_double(selection.lambda_high) << "]"
            << (selection.clamped ? " (lower bound clamped)" : "") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Penalized least-squares regression with one nuisance intercept per "
      "observation"};
  app.require_subcommand(1);

  FitArgs fit_args;
  CLI::App* fit_cmd =
      app.add_subcommand("fit", "Fit one CSV sample and report estimates");
  fit_cmd->add_option("input", fit_args.input,
                      "CSV with a header row; response in the first column")
      ->required();
  fit_cmd->add_option("--penalty", fit_args.penalty, "Penalty kind")
      ->check(CLI::IsMember({"soft", "hard"}))
      ->capture_default_str();
  fit_cmd->add_option("--lambda", fit_args.lambda,
                      "Penalty level, or 'auto' for the data-driven rule")
      ->capture_default_str();
  fit_cmd->add_option("--alpha", fit_args.alpha,
                      "Interval miscoverage level")
      ->capture_default_str();
  fit_cmd->add_option("--seed", fit_args.seed, "Seed for the auto rule")
      ->capture_default_str();
  fit_cmd->add_option("--out", fit_args.out, "Output directory")
      ->capture_default_str();

  ExperimentArgs exp_args;
  CLI::App* exp_cmd = app.add_subcommand(
      "experiment", "Run a Monte Carlo suite from a config file");
  exp_cmd->add_option("suite", exp_args.suite, "Suite to run")
      ->required()
      ->check(CLI::IsMember({"rmse", "coverage", "qq", "selection"}));
  exp_cmd->add_option("--config", exp_args.config_path, "JSON config file")
      ->required();
  exp_cmd->add_option("--out", exp_args.out, "Output directory")
      ->capture_default_str();
  exp_cmd->add_option("--seed", exp_args.seed,
                      "Override the seed from the config file");
  exp_cmd->add_option("--threads", exp_args.threads,
                      "Worker threads (0 = automatic, INCREG_THREADS honored)")
      ->capture_default_str();

  SelectArgs sel_args;
  CLI::App* sel_cmd = app.add_subcommand(
      "select-lambda", "Choose the penalty level for one CSV sample");
  sel_cmd->add_option("input", sel_args.input,
                      "CSV with a header row; response in the first column")
      ->required();
  sel_cmd->add_option("--penalty", sel_args.penalty, "Penalty kind")
      ->check(CLI::IsMember({"soft", "hard"}))
      ->capture_default_str();
  sel_cmd->add_option("--rule", sel_args.rule,
                      "grid: held-out prediction loss; ci: six-sigma rule")
      ->check(CLI::IsMember({"grid", "ci"}))
      ->capture_default_str();
  sel_cmd->add_option("--seed", sel_args.seed, "Seed for the held-out draw")
      ->capture_default_str();
  sel_cmd->add_option("--out", sel_args.out, "Output directory")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  RunRecord rec;
  try {
    int code = 0;
    if (fit_cmd->parsed()) {
      code = run_fit(fit_args, rec);
    } else if (exp_cmd->parsed()) {
      code = run_experiment(exp_args, rec);
    } else {
      code = run_select_lambda(sel_args, rec);
    }
    rec.write(code == 0 ? "ok" : "failed");
    return code;
  } catch (const increg::DegenerateInterval& e) {
    std::cerr << "error: " << e.what() << "\n"
              << "hint: the residual scale is zero or not finite; pass "
                 "--lambda explicitly\n";
    rec.write(std::string("error: ") + e.what());
    return 3;
  } catch (const increg::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    rec.write(std::string("error: ") + e.what());
    return 2;
  } catch (const increg::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    rec.write(std::string("error: ") + e.what());
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    rec.write(std::string("error: ") + e.what());
    return 3;
  }
}
