#include "bayescv/cli.hpp"

#include <exception>

#include "bayescv/evidence.hpp"
#include "bayescv/lattice.hpp"
#include "bayescv/report.hpp"

namespace bayescv {

namespace {

int run_guarded(std::ostream& err, int (*body)(const RunConfig&, std::ostream&),
                const RunConfig& run, std::ostream& out) {
    try {
        return body(run, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DataModelError& e) {
        err << "error: " << e.what() << "\n";
        return kExitDataModel;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}

template <class Report>
void render(const Report& report, OutputFormat format, std::ostream& out) {
    switch (format) {
        case OutputFormat::Text:
            render_text(report, out);
            break;
        case OutputFormat::Json:
            render_json(report, out);
            break;
        case OutputFormat::Csv:
            render_csv(report, out);
            break;
    }
}

int score_body(const RunConfig& run, std::ostream& out) {
    const ResolvedRun r = resolve_run(run);
    if (r.hypotheses.empty()) {
        throw ConfigError("at least one hypothesis is required");
    }
    if (r.data.size() < 2) {
        throw ConfigError("leave-one-out scoring requires d >= 2");
    }
    for (int m : run.leave_out) {
        if (m < 1 || m > r.data.size() - 1) {
            throw ConfigError("leave-m-out size " + std::to_string(m) + " must be in 1..d-1");
        }
    }
    ScoreReport report;
    report.d = r.data.size();
    for (const Hypothesis& h : r.hypotheses) {
        const MarginalCache cache = build_cache(h, r.data, r.threads);
        ScoreEntry entry;
        entry.name = h.name;
        entry.log_likelihood = cache.full_set();
        entry.loo = loo_score(cache);
        for (int m : run.leave_out) {
            entry.leave_m_out.push_back(leave_m_out_score(cache, m));
        }
        report.entries.push_back(std::move(entry));
    }
    render(report, run.format, out);
    return kExitOk;
}

int verify_body(const RunConfig& run, std::ostream& out) {
    const ResolvedRun r = resolve_run(run);
    if (r.hypotheses.empty()) {
        throw ConfigError("at least one hypothesis is required");
    }
    VerifyReport report;
    report.d = r.data.size();
    report.tolerance = r.tolerance;
    report.all_pass = true;
    for (const Hypothesis& h : r.hypotheses) {
        VerifyEntry entry;
        entry.name = h.name;
        entry.result = verify_identity(h, r.data, r.tolerance, r.threads);
        report.all_pass = report.all_pass && entry.result.pass;
        report.entries.push_back(std::move(entry));
    }
    render(report, run.format, out);
    return report.all_pass ? kExitOk : kExitIdentityFailure;
}

int compare_body(const RunConfig& run, std::ostream& out) {
    const ResolvedRun r = resolve_run(run);
    if (r.hypotheses.size() < 2) {
        throw ConfigError("compare needs at least 2 hypotheses");
    }
    HypothesisSet set;
    set.hypotheses = r.hypotheses;
    for (std::size_t h = 0; h < r.priors.size(); ++h) {
        if (!r.priors[h].has_value()) {
            throw ConfigError("hypothesis '" + r.hypotheses[h].name +
                              "' has no prior; compare requires one per hypothesis");
        }
        set.priors.push_back(*r.priors[h]);
    }
    CompareReport report;
    report.d = r.data.size();
    report.evidence = compare_hypotheses(set, r.data);
    render(report, run.format, out);
    return kExitOk;
}

int subsets_body(const RunConfig& run, std::ostream& out) {
    const ResolvedRun r = resolve_run(run);
    if (r.hypotheses.empty()) {
        throw ConfigError("at least one hypothesis is required");
    }
    SubsetsReport report;
    report.d = r.data.size();
    for (const Hypothesis& h : r.hypotheses) {
        const MarginalCache cache = build_cache(h, r.data, r.threads);
        report.entries.push_back(SubsetsEntry{h.name, per_cardinality_scores(cache, r.threads)});
    }
    render(report, run.format, out);
    return kExitOk;
}

}  // namespace

int cmd_score(const RunConfig& run, std::ostream& out, std::ostream& err) {
    return run_guarded(err, score_body, run, out);
}

int cmd_verify(const RunConfig& run, std::ostream& out, std::ostream& err) {
    return run_guarded(err, verify_body, run, out);
}

int cmd_compare(const RunConfig& run, std::ostream& out, std::ostream& err) {
    return run_guarded(err, compare_body, run, out);
}

int cmd_subsets(const RunConfig& run, std::ostream& out, std::ostream& err) {
    return run_guarded(err, subsets_body, run, out);
}

}  // namespace bayescv
