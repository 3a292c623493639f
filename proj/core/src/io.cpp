#include "increg/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include "json.hpp"

#include "increg/errors.hpp"
#include "increg/stats.hpp"

namespace increg::io {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream body;
  body << in.rdbuf();
  if (in.bad()) throw ParseError("cannot read '" + path + "'");
  return std::move(body).str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw Error("cannot write '" + path + "'");
}

std::string render_tsv(const Row& header, const std::vector<Row>& rows) {
  std::string text;
  const auto append_row = [&text](const Row& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) text += '\t';
      text += row[i];
    }
    text += '\n';
  };
  append_row(header);
  for (const Row& row : rows) {
    if (row.size() != header.size()) {
      throw Error("tsv row width does not match the header");
    }
    append_row(row);
  }
  return text;
}

namespace {

std::string trimmed(const std::string& text, std::string::size_type begin,
                    std::string::size_type end) {
  while (begin < end && (text[begin] == ' ' || text[begin] == '\t')) ++begin;
  while (end > begin && (text[end - 1] == ' ' || text[end - 1] == '\t')) --end;
  return text.substr(begin, end - begin);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string::size_type start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    const auto end = comma == std::string::npos ? line.size() : comma;
    fields.push_back(trimmed(line, start, end));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

double parse_number_field(const std::string& field, const std::string& path,
                          std::size_t line_no, std::size_t column) {
  double value = 0.0;
  const char* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), last, value);
  if (field.empty() || ec != std::errc() || ptr != last) {
    throw ParseError(path + ":" + std::to_string(line_no) + ": column " +
                     std::to_string(column + 1) + ": '" + field +
                     "' is not a number");
  }
  if (!std::isfinite(value)) {
    throw ParseError(path + ":" + std::to_string(line_no) + ": column " +
                     std::to_string(column + 1) + ": non-finite value");
  }
  return value;
}

}  // namespace

Dataset read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");

  std::string line;
  std::size_t line_no = 0;
  std::size_t ncols = 0;
  bool have_header = false;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (!have_header) {
      ncols = fields.size();
      if (ncols < 2) {
        throw ParseError(path + ": header needs a response column and at "
                         "least one covariate");
      }
      have_header = true;
      continue;
    }
    if (fields.size() != ncols) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(ncols) + " fields, got " +
                       std::to_string(fields.size()));
    }
    std::vector<double> row(ncols);
    for (std::size_t j = 0; j < ncols; ++j) {
      row[j] = parse_number_field(fields[j], path, line_no, j);
    }
    rows.push_back(std::move(row));
  }
  if (!have_header) throw ParseError(path + ": empty file");
  if (rows.empty()) throw ParseError(path + ": no data rows");

  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto d = static_cast<Eigen::Index>(ncols - 1);
  Dataset data;
  data.Y.resize(n);
  data.X.resize(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    data.Y(i) = row[0];
    for (Eigen::Index j = 0; j < d; ++j) {
      data.X(i, j) = row[static_cast<std::size_t>(j) + 1];
    }
  }
  data.validate();
  return data;
}

namespace {

constexpr const char* kConfigSchema = "increg.config.v1";

void check_keys(const json& j, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ConfigError("config: unknown key '" + where + item.key() + "'");
    }
  }
}

double get_number(const json& j, const std::string& where, const char* key,
                  double fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number()) {
    throw ConfigError("config: '" + where + key + "' must be a number");
  }
  return v.get<double>();
}

std::int64_t get_integer(const json& j, const std::string& where,
                         const char* key, std::int64_t fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer()) {
    throw ConfigError("config: '" + where + key + "' must be an integer");
  }
  return v.get<std::int64_t>();
}

std::uint64_t get_seed(const json& j, const std::string& where,
                       const char* key, std::uint64_t fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_unsigned()) {
    throw ConfigError("config: '" + where + key +
                      "' must be a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

std::vector<double> number_array(const json& v, const std::string& where) {
  if (!v.is_array()) {
    throw ConfigError("config: '" + where + "' must be an array of numbers");
  }
  std::vector<double> out;
  out.reserve(v.size());
  for (const json& item : v) {
    if (!item.is_number()) {
      throw ConfigError("config: '" + where + "' must be an array of numbers");
    }
    out.push_back(item.get<double>());
  }
  return out;
}

VectorXd to_vector(const std::vector<double>& values) {
  VectorXd out(static_cast<Eigen::Index>(values.size()));
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    out(i) = values[static_cast<std::size_t>(i)];
  }
  return out;
}

std::vector<double> parse_grid(const json& v, const std::string& where) {
  if (v.is_array()) return number_array(v, where);
  if (v.is_object()) {
    check_keys(v, where + ".", {"min", "max", "points"});
    for (const char* key : {"min", "max", "points"}) {
      if (!v.contains(key)) {
        throw ConfigError("config: '" + where + "' needs min, max and points");
      }
    }
    const double lo = get_number(v, where + ".", "min", 0.0);
    const double hi = get_number(v, where + ".", "max", 0.0);
    const std::int64_t points = get_integer(v, where + ".", "points", 0);
    if (points < 2) {
      throw ConfigError("config: '" + where + ".points' must be at least 2");
    }
    return log_grid(lo, hi, static_cast<std::size_t>(points));
  }
  throw ConfigError("config: '" + where +
                    "' must be an array or a {min, max, points} object");
}

MuMechanism parse_mechanism(const json& v) {
  if (!v.is_object()) throw ConfigError("config: 'mu' must be an object");
  check_keys(v, "mu.", {"p0", "p1", "p2", "c", "p_w", "tau"});
  MuMechanism mech;
  mech.p0 = get_number(v, "mu.", "p0", mech.p0);
  mech.p1 = get_number(v, "mu.", "p1", mech.p1);
  mech.p2 = get_number(v, "mu.", "p2", mech.p2);
  mech.c = get_number(v, "mu.", "c", mech.c);
  mech.p_w = get_number(v, "mu.", "p_w", mech.p_w);
  mech.tau = get_number(v, "mu.", "tau", mech.tau);
  return mech;
}

VectorXd parse_sparse_mu(const json& v, Eigen::Index n) {
  if (!v.is_object()) {
    throw ConfigError("config: 'mu_fixed_sparse' must be an object");
  }
  check_keys(v, "mu_fixed_sparse.", {"indices", "values"});
  if (!v.contains("indices") || !v.contains("values")) {
    throw ConfigError("config: 'mu_fixed_sparse' needs indices and values");
  }
  const json& idx = v.at("indices");
  const std::vector<double> values =
      number_array(v.at("values"), "mu_fixed_sparse.values");
  if (!idx.is_array() || idx.size() != values.size()) {
    throw ConfigError("config: 'mu_fixed_sparse' indices and values must be "
                      "arrays of equal length");
  }
  VectorXd mu = VectorXd::Zero(n);
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const json& item = idx[k];
    if (!item.is_number_integer()) {
      throw ConfigError("config: 'mu_fixed_sparse.indices' must be integers");
    }
    const std::int64_t i = item.get<std::int64_t>();
    if (i < 0 || i >= n) {
      throw ConfigError("config: 'mu_fixed_sparse.indices' entry " +
                        std::to_string(i) + " is out of range");
    }
    if (seen[static_cast<std::size_t>(i)]) {
      throw ConfigError("config: 'mu_fixed_sparse.indices' entry " +
                        std::to_string(i) + " is duplicated");
    }
    seen[static_cast<std::size_t>(i)] = true;
    mu(static_cast<Eigen::Index>(i)) = values[k];
  }
  return mu;
}

LambdaProcedureConfig parse_procedure(const json& v) {
  if (!v.is_object()) {
    throw ConfigError("config: 'lambda_procedure' must be an object");
  }
  check_keys(v, "lambda_procedure.",
             {"pure_fraction", "test_fraction", "quantile_q", "alpha_l",
              "soft_lambda_l", "grid_size", "seed"});
  LambdaProcedureConfig out;
  const std::string where = "lambda_procedure.";
  out.pure_fraction = get_number(v, where, "pure_fraction", out.pure_fraction);
  out.test_fraction = get_number(v, where, "test_fraction", out.test_fraction);
  out.quantile_q = get_number(v, where, "quantile_q", out.quantile_q);
  out.alpha_l = get_number(v, where, "alpha_l", out.alpha_l);
  out.soft_lambda_l = get_number(v, where, "soft_lambda_l", out.soft_lambda_l);
  const std::int64_t grid =
      get_integer(v, where, "grid_size",
                  static_cast<std::int64_t>(out.grid_size));
  if (grid < 2) {
    throw ConfigError("config: 'lambda_procedure.grid_size' must be at "
                      "least 2");
  }
  out.grid_size = static_cast<std::size_t>(grid);
  out.seed = get_seed(v, where, "seed", out.seed);
  return out;
}

PenaltyKind parse_kind(const json& v, const std::string& where) {
  if (v.is_string()) {
    const std::string name = v.get<std::string>();
    if (name == "soft") return PenaltyKind::Soft;
    if (name == "hard") return PenaltyKind::Hard;
  }
  throw ConfigError("config: '" + where + "' must be \"soft\" or \"hard\"");
}

CoverageParams parse_coverage(const json& v) {
  if (!v.is_object()) throw ConfigError("config: 'coverage' must be an object");
  check_keys(v, "coverage.", {"alpha", "component", "cells"});
  CoverageParams out;
  out.alpha = get_number(v, "coverage.", "alpha", out.alpha);
  out.component = static_cast<Eigen::Index>(
      get_integer(v, "coverage.", "component", out.component));
  if (!v.contains("cells")) {
    throw ConfigError("config: 'coverage.cells' is required");
  }
  const json& cells = v.at("cells");
  if (!cells.is_array() || cells.empty()) {
    throw ConfigError("config: 'coverage.cells' must be a nonempty array of "
                      "[p1, p2] pairs");
  }
  for (const json& cell : cells) {
    const auto pair = number_array(cell, "coverage.cells");
    if (pair.size() != 2) {
      throw ConfigError("config: 'coverage.cells' entries must be [p1, p2] "
                        "pairs");
    }
    out.cells.emplace_back(pair[0], pair[1]);
  }
  return out;
}

QqParams parse_qq(const json& v) {
  if (!v.is_object()) throw ConfigError("config: 'qq' must be an object");
  check_keys(v, "qq.", {"lambda", "component"});
  QqParams out;
  out.lambda = get_number(v, "qq.", "lambda", out.lambda);
  out.component = static_cast<Eigen::Index>(
      get_integer(v, "qq.", "component", out.component));
  return out;
}

SelectionParams parse_selection(const json& v) {
  if (!v.is_object()) {
    throw ConfigError("config: 'selection' must be an object");
  }
  check_keys(v, "selection.", {"lambda", "threshold", "kind"});
  SelectionParams out;
  out.lambda = get_number(v, "selection.", "lambda", out.lambda);
  out.threshold = get_number(v, "selection.", "threshold", out.threshold);
  if (v.contains("kind")) out.kind = parse_kind(v.at("kind"), "selection.kind");
  return out;
}

}  // namespace

LoadedConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) {
    throw ConfigError("config: top level must be an object");
  }
  check_keys(j, "",
             {"schema", "n", "d", "beta_star", "sigma", "x_sd", "x_cov", "mu",
              "mu_seed", "mu_fixed", "mu_fixed_sparse", "reps", "seed",
              "methods", "hard_grid", "soft_grid", "lambda_procedure",
              "coverage", "qq", "selection"});
  if (j.contains("schema")) {
    const json& v = j.at("schema");
    if (!v.is_string() || v.get<std::string>() != kConfigSchema) {
      throw ConfigError(std::string("config: schema must be \"") +
                        kConfigSchema + "\"");
    }
  }

  LoadedConfig out;
  ExperimentConfig& cfg = out.experiment;
  cfg.n = static_cast<Eigen::Index>(get_integer(j, "", "n", cfg.n));
  cfg.d = static_cast<Eigen::Index>(get_integer(j, "", "d", cfg.d));
  cfg.sigma = get_number(j, "", "sigma", cfg.sigma);
  if (j.contains("beta_star")) {
    cfg.beta_star = to_vector(number_array(j.at("beta_star"), "beta_star"));
  }
  if (j.contains("x_sd") && j.contains("x_cov")) {
    throw ConfigError("config: 'x_sd' and 'x_cov' are mutually exclusive");
  }
  if (j.contains("x_sd")) {
    const double sd = get_number(j, "", "x_sd", 1.0);
    if (!(sd > 0.0) || !std::isfinite(sd)) {
      throw ConfigError("config: 'x_sd' must be a positive real");
    }
    cfg.x_cov = sd * sd * MatrixXd::Identity(cfg.d, cfg.d);
  }
  if (j.contains("x_cov")) {
    const json& v = j.at("x_cov");
    if (!v.is_array() || v.empty()) {
      throw ConfigError("config: 'x_cov' must be an array of rows");
    }
    const auto rows = static_cast<Eigen::Index>(v.size());
    MatrixXd cov(rows, rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
      const auto row =
          number_array(v[static_cast<std::size_t>(i)], "x_cov");
      if (static_cast<Eigen::Index>(row.size()) != rows) {
        throw ConfigError("config: 'x_cov' must be square");
      }
      for (Eigen::Index k = 0; k < rows; ++k) {
        cov(i, k) = row[static_cast<std::size_t>(k)];
      }
    }
    cfg.x_cov = std::move(cov);
  }
  if (j.contains("mu")) cfg.mu = parse_mechanism(j.at("mu"));
  if (j.contains("mu_fixed") && j.contains("mu_fixed_sparse")) {
    throw ConfigError("config: 'mu_fixed' and 'mu_fixed_sparse' are mutually "
                      "exclusive");
  }
  if (j.contains("mu_fixed")) {
    cfg.mu_fixed = to_vector(number_array(j.at("mu_fixed"), "mu_fixed"));
  }
  if (j.contains("mu_fixed_sparse")) {
    cfg.mu_fixed = parse_sparse_mu(j.at("mu_fixed_sparse"), cfg.n);
  }
  if (j.contains("mu_seed")) cfg.mu_seed = get_seed(j, "", "mu_seed", 0);
  const std::int64_t reps =
      get_integer(j, "", "reps", static_cast<std::int64_t>(cfg.reps));
  if (reps < 1) throw ConfigError("config: 'reps' must be positive");
  cfg.reps = static_cast<std::size_t>(reps);
  cfg.seed = get_seed(j, "", "seed", cfg.seed);
  if (j.contains("methods")) {
    const json& v = j.at("methods");
    if (!v.is_array()) {
      throw ConfigError("config: 'methods' must be an array of names");
    }
    for (const json& item : v) {
      if (!item.is_string()) {
        throw ConfigError("config: 'methods' must be an array of names");
      }
      cfg.methods.push_back(method_from_name(item.get<std::string>()));
    }
  }
  if (j.contains("hard_grid")) {
    cfg.hard_grid = parse_grid(j.at("hard_grid"), "hard_grid");
  }
  if (j.contains("soft_grid")) {
    cfg.soft_grid = parse_grid(j.at("soft_grid"), "soft_grid");
  }
  if (j.contains("lambda_procedure")) {
    cfg.selection = parse_procedure(j.at("lambda_procedure"));
  }
  if (j.contains("coverage")) out.coverage = parse_coverage(j.at("coverage"));
  if (j.contains("qq")) out.qq = parse_qq(j.at("qq"));
  if (j.contains("selection")) {
    out.selection = parse_selection(j.at("selection"));
  }
  cfg.validate();
  return out;
}

LoadedConfig load_config_file(const std::string& path) {
  try {
    return parse_config(read_text_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

namespace {

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error("cannot create output directory '" + dir + "': " +
                ec.message());
  }
}

std::string join_path(const std::string& dir, const char* name) {
  return (std::filesystem::path(dir) / name).string();
}

json vector_json(const VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json mechanism_json(const MuMechanism& m) {
  return json{{"p0", m.p0}, {"p1", m.p1},   {"p2", m.p2},
              {"c", m.c},   {"p_w", m.p_w}, {"tau", m.tau}};
}

json config_json(const ExperimentConfig& cfg) {
  json out;
  out["n"] = cfg.n;
  out["d"] = cfg.d;
  out["sigma"] = cfg.sigma;
  out["beta_star"] = vector_json(cfg.resolved_beta());
  const MatrixXd cov = cfg.resolved_x_cov();
  json cov_rows = json::array();
  for (Eigen::Index i = 0; i < cov.rows(); ++i) {
    cov_rows.push_back(vector_json(cov.row(i).transpose()));
  }
  out["x_cov"] = std::move(cov_rows);
  out["mu"] = mechanism_json(cfg.mu);
  if (cfg.mu_seed) out["mu_seed"] = *cfg.mu_seed;
  if (cfg.mu_fixed) out["mu_fixed"] = vector_json(*cfg.mu_fixed);
  out["reps"] = cfg.reps;
  out["seed"] = cfg.seed;
  if (!cfg.methods.empty()) {
    json names = json::array();
    for (Method m : cfg.methods) names.push_back(method_name(m));
    out["methods"] = std::move(names);
  }
  if (!cfg.hard_grid.empty()) out["hard_grid"] = cfg.hard_grid;
  if (!cfg.soft_grid.empty()) out["soft_grid"] = cfg.soft_grid;
  out["lambda_procedure"] =
      json{{"pure_fraction", cfg.selection.pure_fraction},
           {"test_fraction", cfg.selection.test_fraction},
           {"quantile_q", cfg.selection.quantile_q},
           {"alpha_l", cfg.selection.alpha_l},
           {"soft_lambda_l", cfg.selection.soft_lambda_l},
           {"grid_size", cfg.selection.grid_size},
           {"seed", cfg.selection.seed}};
  return out;
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

json ks_json(const stats::KsResult& ks) {
  return json{{"statistic", ks.statistic}, {"p_value", ks.p_value}};
}

}  // namespace

std::vector<std::string> write_rmse_report(const RmseReport& report,
                                           const ExperimentConfig& config,
                                           const std::string& out_dir) {
  ensure_dir(out_dir);
  const Eigen::Index d = config.d;
  const Row header{"method", "target", "lambda", "bias", "rmse"};
  std::vector<Row> rows;
  for (const MethodReport& mr : report.methods) {
    const char* name = method_name(mr.method);
    for (std::size_t k = 0; k < mr.rmse_full_curve.size(); ++k) {
      const auto ki = static_cast<Eigen::Index>(k);
      const std::string lambda_str =
          mr.lambda_grid.empty() ? "-" : format_double(mr.lambda_grid[k]);
      for (Eigen::Index t = 0; t < d; ++t) {
        rows.push_back({name, "beta" + std::to_string(t + 1), lambda_str,
                        format_double(mr.bias_by_lambda(ki, t)),
                        format_double(mr.rmse_by_lambda(ki, t))});
      }
      rows.push_back({name, "beta", lambda_str, "-",
                      format_double(mr.rmse_full_curve[k])});
    }
  }
  const std::string tsv_path = join_path(out_dir, "rmse.tsv");
  write_text_file(tsv_path, render_tsv(header, rows));

  json summary;
  summary["schema"] = "increg.rmse.v1";
  summary["config"] = config_json(config);
  summary["reps"] = report.reps;
  summary["failed_reps"] = report.failed_reps;
  summary["failures"] = report.failure_messages;
  json methods = json::object();
  for (const MethodReport& mr : report.methods) {
    json m;
    m["used"] = mr.used;
    m["bias"] = vector_json(mr.bias());
    m["rmse"] = vector_json(mr.rmse());
    m["rmse_full"] = mr.rmse_full();
    if (!std::isnan(mr.best_lambda)) m["best_lambda"] = mr.best_lambda;
    if (!std::isnan(mr.mean_selected_lambda)) {
      m["mean_selected_lambda"] = mr.mean_selected_lambda;
    }
    methods[method_name(mr.method)] = std::move(m);
  }
  summary["methods"] = std::move(methods);
  const std::string json_path = join_path(out_dir, "rmse_summary.json");
  write_text_file(json_path, dump_json(summary));
  return {tsv_path, json_path};
}

std::vector<std::string> write_coverage_report(const CoverageReport& report,
                                               const ExperimentConfig& config,
                                               const std::string& out_dir) {
  ensure_dir(out_dir);
  const Row header{"p1", "p2", "coverage", "mc_se", "mean_lambda", "used",
                   "reps"};
  std::vector<Row> rows;
  json cells = json::array();
  for (const CoverageCell& cell : report.cells) {
    rows.push_back({format_double(cell.p1), format_double(cell.p2),
                    format_double(cell.coverage), format_double(cell.mc_se),
                    format_double(cell.mean_lambda), std::to_string(cell.used),
                    std::to_string(cell.reps)});
    cells.push_back(json{{"p1", cell.p1},
                         {"p2", cell.p2},
                         {"coverage", cell.coverage},
                         {"mc_se", cell.mc_se},
                         {"mean_lambda", cell.mean_lambda},
                         {"used", cell.used},
                         {"reps", cell.reps}});
  }
  const std::string tsv_path = join_path(out_dir, "coverage.tsv");
  write_text_file(tsv_path, render_tsv(header, rows));

  json summary;
  summary["schema"] = "increg.coverage.v1";
  summary["config"] = config_json(config);
  summary["alpha"] = report.alpha;
  summary["cells"] = std::move(cells);
  summary["failed_reps"] = report.failed_reps;
  summary["failures"] = report.failure_messages;
  const std::string json_path = join_path(out_dir, "coverage_summary.json");
  write_text_file(json_path, dump_json(summary));
  return {tsv_path, json_path};
}

namespace {

std::string qq_series_tsv(const std::vector<double>& sorted_t) {
  const Row header{"empirical", "theoretical"};
  std::vector<Row> rows;
  const auto count = static_cast<double>(sorted_t.size());
  for (std::size_t i = 0; i < sorted_t.size(); ++i) {
    const double p = (static_cast<double>(i) + 0.5) / count;
    rows.push_back(
        {format_double(sorted_t[i]), format_double(stats::normal_quantile(p))});
  }
  return render_tsv(header, rows);
}

}  // namespace

std::vector<std::string> write_qq_report(const QqReport& report,
                                         const ExperimentConfig& config,
                                         const QqParams& params,
                                         const std::string& out_dir) {
  ensure_dir(out_dir);
  const std::string two_step_path = join_path(out_dir, "qq_two_step.tsv");
  write_text_file(two_step_path, qq_series_tsv(report.t_two_step));
  const std::string penalized_path = join_path(out_dir, "qq_penalized.tsv");
  write_text_file(penalized_path, qq_series_tsv(report.t_penalized));

  json summary;
  summary["schema"] = "increg.qq.v1";
  summary["config"] = config_json(config);
  summary["lambda"] = params.lambda;
  summary["component"] = params.component;
  summary["ks_two_step"] = ks_json(report.ks_two_step);
  summary["ks_penalized"] = ks_json(report.ks_penalized);
  summary["used"] = report.used;
  summary["reps"] = report.reps;
  summary["failed_reps"] = report.failed_reps;
  summary["failures"] = report.failure_messages;
  const std::string json_path = join_path(out_dir, "qq_summary.json");
  write_text_file(json_path, dump_json(summary));
  return {two_step_path, penalized_path, json_path};
}

std::vector<std::string> write_selection_report(const SelectionReport& report,
                                                const ExperimentConfig& config,
                                                const std::string& out_dir) {
  ensure_dir(out_dir);
  const Row header{"lambda", "threshold", "frequency", "mc_se", "hits", "used",
                   "reps"};
  const std::vector<Row> rows{{format_double(report.lambda),
                               format_double(report.threshold),
                               format_double(report.frequency),
                               format_double(report.mc_se),
                               std::to_string(report.hits),
                               std::to_string(report.used),
                               std::to_string(report.reps)}};
  const std::string tsv_path = join_path(out_dir, "selection.tsv");
  write_text_file(tsv_path, render_tsv(header, rows));

  json summary;
  summary["schema"] = "increg.selection.v1";
  summary["config"] = config_json(config);
  summary["lambda"] = report.lambda;
  summary["threshold"] = report.threshold;
  summary["frequency"] = report.frequency;
  summary["mc_se"] = report.mc_se;
  summary["hits"] = report.hits;
  summary["used"] = report.used;
  summary["reps"] = report.reps;
  summary["failed_reps"] = report.failed_reps;
  summary["failures"] = report.failure_messages;
  const std::string json_path = join_path(out_dir, "selection_summary.json");
  write_text_file(json_path, dump_json(summary));
  return {tsv_path, json_path};
}

}  // namespace increg::io
