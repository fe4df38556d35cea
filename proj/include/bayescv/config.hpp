#pragma once

// Run configuration and file ingestion for the CLI: datasets (CSV or JSON)
// and the hypothesis config document.

#include <optional>
#include <string>
#include <vector>

#include "bayescv/core.hpp"
#include "bayescv/models.hpp"

namespace bayescv {

enum class DataFormat { Auto, Csv, Json };
enum class OutputFormat { Text, Json, Csv };

struct RunConfig {
    std::string data_path;
    DataFormat data_format = DataFormat::Auto;
    bool csv_header = false;  // skip one header line in CSV datasets

    std::string config_path;

    // CLI overrides; config-file values apply when unset.
    std::optional<double> tolerance;
    std::optional<int> d_max;

    OutputFormat format = OutputFormat::Text;
    int threads = 0;              // 0 = OpenMP default
    std::vector<int> leave_out;   // extra leave-m-out sizes for `score`
};

/// Hypotheses plus experiment-level settings from one JSON document.
struct ExperimentConfig {
    std::vector<Hypothesis> hypotheses;
    std::vector<std::optional<double>> priors;  // aligned with hypotheses
    std::optional<double> tolerance;
    std::optional<int> d_max;
};

/// Parses `{"hypotheses":[{"name":...,"kind":...,"params":{...},"prior":...}],
/// "tolerance":...,"d_max":...}`. Throws ConfigError with a field diagnostic.
ExperimentConfig load_experiment_config(const std::string& path);

/// Reads a dataset file. CSV: one value per line, optional header line.
/// JSON: a flat array of numbers. Format Auto picks by file extension
/// (".json" = JSON, anything else CSV). Throws ConfigError with line/field
/// diagnostics; the d-max cap is enforced here.
Dataset load_dataset(const std::string& path, DataFormat format, bool csv_header,
                     int max_data);

/// Effective settings for one run: config file merged with CLI overrides.
struct ResolvedRun {
    Dataset data;
    std::vector<Hypothesis> hypotheses;
    std::vector<std::optional<double>> priors;
    double tolerance = 1e-9;
    int d_max = kDefaultMaxData;
    int threads = 0;
};

/// Loads both files and applies precedence (CLI flag over config file over
/// default). Validates tolerance > 0, threads >= 1 when set, d_max bounds.
ResolvedRun resolve_run(const RunConfig& run);

}  // namespace bayescv
