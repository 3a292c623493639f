#pragma once

#include <optional>
#include <string>
#include <vector>

#include "increg/data.hpp"
#include "increg/simulation.hpp"

namespace increg::io {

/// Fixed %.12g rendering used in every report so that reruns with the same
/// seed produce byte-identical files.
std::string format_double(double v);

/// CSV with a header row; the response is the first column, covariates
/// follow. Throws ParseError naming the offending line.
Dataset read_csv(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

using Row = std::vector<std::string>;
std::string render_tsv(const Row& header, const std::vector<Row>& rows);

struct LoadedConfig {
  ExperimentConfig experiment;
  std::optional<CoverageParams> coverage;
  std::optional<QqParams> qq;
  std::optional<SelectionParams> selection;
};

/// Strict JSON config: unknown keys are rejected so typos cannot silently
/// fall back to defaults. Layout documented in the README and the bundled
/// configs.
LoadedConfig parse_config(const std::string& json_text);
LoadedConfig load_config_file(const std::string& path);

// Suite report writers. Each returns the paths it wrote under out_dir.
std::vector<std::string> write_rmse_report(const RmseReport& report,
                                           const ExperimentConfig& config,
                                           const std::string& out_dir);
std::vector<std::string> write_coverage_report(const CoverageReport& report,
                                               const ExperimentConfig& config,
                                               const std::string& out_dir);
std::vector<std::string> write_qq_report(const QqReport& report,
                                         const ExperimentConfig& config,
                                         const QqParams& params,
                                         const std::string& out_dir);
std::vector<std::string> write_selection_report(const SelectionReport& report,
                                                const ExperimentConfig& config,
                                                const std::string& out_dir);

}  // namespace increg::io
