// bayescv command-line tool: exact model-evidence quantities and
// cross-validation log-score decompositions for closed-form models.

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "bayescv/cli.hpp"

namespace {

using bayescv::DataFormat;
using bayescv::OutputFormat;
using bayescv::RunConfig;

struct CommandOptions {
    RunConfig run;
    double tolerance = 0.0;
    int d_max = 0;
};

void add_common_options(CLI::App& cmd, CommandOptions& opts, OutputFormat default_format) {
    opts.run.format = default_format;
    cmd.add_option("--data", opts.run.data_path, "dataset file (CSV column or JSON array)")
        ->required();
    cmd.add_option("--config", opts.run.config_path, "hypothesis config (JSON)")->required();
    cmd.add_option("--data-format", opts.run.data_format, "dataset format (default: by extension)")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, DataFormat>{{"csv", DataFormat::Csv},
                                              {"json", DataFormat::Json}},
            CLI::ignore_case));
    cmd.add_flag("--header", opts.run.csv_header, "skip one header line in CSV datasets");
    cmd.add_option("--format", opts.run.format, "output format")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, OutputFormat>{{"text", OutputFormat::Text},
                                                {"json", OutputFormat::Json},
                                                {"csv", OutputFormat::Csv}},
            CLI::ignore_case));
    cmd.add_option("--tolerance", opts.tolerance, "identity residual tolerance (default 1e-9)");
    cmd.add_option("--d-max", opts.d_max, "dataset size cap (default 20, hard cap 26)");
    cmd.add_option("--threads", opts.run.threads, "parallelism degree (default: all cores)")
        ->check(CLI::PositiveNumber);
}

void apply_overrides(const CLI::App& cmd, CommandOptions& opts) {
    if (cmd.count("--tolerance") > 0) {
        opts.run.tolerance = opts.tolerance;
    }
    if (cmd.count("--d-max") > 0) {
        opts.run.d_max = opts.d_max;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Bayesian evidence and cross-validation log-score toolkit"};
    app.require_subcommand(1);

    CommandOptions score_opts;
    CLI::App* score = app.add_subcommand(
        "score", "log-likelihood, LOO score and requested leave-m-out scores per hypothesis");
    add_common_options(*score, score_opts, OutputFormat::Text);
    score
        ->add_option("--leave-out", score_opts.run.leave_out,
                     "comma-separated leave-m-out sizes to report")
        ->delimiter(',');

    CommandOptions verify_opts;
    CLI::App* verify = app.add_subcommand(
        "verify", "check the log-likelihood / averaged-log-score identity per hypothesis");
    add_common_options(*verify, verify_opts, OutputFormat::Text);

    CommandOptions compare_opts;
    CLI::App* compare = app.add_subcommand(
        "compare", "posteriors, Bayes factors and weights of evidence over the hypothesis set");
    add_common_options(*compare, compare_opts, OutputFormat::Text);

    CommandOptions subsets_opts;
    CLI::App* subsets = app.add_subcommand(
        "subsets", "per-cardinality averaged log-score rows for external plotting");
    add_common_options(*subsets, subsets_opts, OutputFormat::Csv);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        // CLI11's own exit code for --help is 0; anything else is a usage error.
        return code == 0 ? bayescv::kExitOk : bayescv::kExitConfig;
    }

    if (score->parsed()) {
        apply_overrides(*score, score_opts);
        return bayescv::cmd_score(score_opts.run, std::cout, std::cerr);
    }
    if (verify->parsed()) {
        apply_overrides(*verify, verify_opts);
        return bayescv::cmd_verify(verify_opts.run, std::cout, std::cerr);
    }
    if (compare->parsed()) {
        apply_overrides(*compare, compare_opts);
        return bayescv::cmd_compare(compare_opts.run, std::cout, std::cerr);
    }
    apply_overrides(*subsets, subsets_opts);
    return bayescv::cmd_subsets(subsets_opts.run, std::cout, std::cerr);
}
