#include "bayescv/report.hpp"

#include <cstdio>

#include "json.hpp"

namespace bayescv {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string f4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

std::string e3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

ordered_json decomposition_json(const DecompositionTable& table) {
    ordered_json rows = ordered_json::array();
    for (const DecompositionRow& row : table.rows) {
        rows.push_back(ordered_json{{"k", row.k},
                                    {"count", row.count},
                                    {"score", row.score},
                                    {"cumulative", row.cumulative}});
    }
    return ordered_json{{"rows", rows},
                        {"reconstructed", table.reconstructed},
                        {"direct", table.direct},
                        {"residual", table.residual}};
}

void decomposition_csv(const std::string& name, const DecompositionTable& table,
                       std::ostream& out) {
    for (const DecompositionRow& row : table.rows) {
        out << name << ',' << row.k << ',' << row.count << ',' << g17(row.score) << ','
            << g17(row.cumulative) << '\n';
    }
}

const char* cv_label(const CvScore& score) {
    return score.scheme == CvScheme::KFoldPartition ? "k-fold" : "leave-m-out";
}

}  // namespace

void render_text(const ScoreReport& report, std::ostream& out) {
    out << "dataset: d=" << report.d << "\n";
    for (const ScoreEntry& entry : report.entries) {
        out << "hypothesis " << entry.name << "\n";
        out << "  log-likelihood: " << f4(entry.log_likelihood) << "\n";
        out << "  loo-score:      " << f4(entry.loo.value) << "\n";
        for (const CvScore& score : entry.leave_m_out) {
            out << "  leave-" << score.m << "-out:    " << f4(score.value) << " ("
                << cv_label(score) << ")\n";
        }
    }
}

void render_json(const ScoreReport& report, std::ostream& out) {
    ordered_json results = ordered_json::array();
    for (const ScoreEntry& entry : report.entries) {
        ordered_json extra = ordered_json::array();
        for (const CvScore& score : entry.leave_m_out) {
            extra.push_back(ordered_json{{"m", score.m}, {"score", score.value}});
        }
        results.push_back(ordered_json{{"hypothesis", entry.name},
                                       {"log_likelihood", entry.log_likelihood},
                                       {"loo_score", entry.loo.value},
                                       {"leave_m_out", extra}});
    }
    out << ordered_json{{"dataset", ordered_json{{"d", report.d}}}, {"results", results}}.dump(2)
        << "\n";
}

void render_csv(const ScoreReport& report, std::ostream& out) {
    out << "hypothesis,metric,value\n";
    for (const ScoreEntry& entry : report.entries) {
        out << entry.name << ",log_likelihood," << g17(entry.log_likelihood) << '\n';
        out << entry.name << ",loo_score," << g17(entry.loo.value) << '\n';
        for (const CvScore& score : entry.leave_m_out) {
            out << entry.name << ",leave_" << score.m << "_out," << g17(score.value) << '\n';
        }
    }
}

void render_text(const VerifyReport& report, std::ostream& out) {
    out << "dataset: d=" << report.d << "\n";
    for (const VerifyEntry& entry : report.entries) {
        const DecompositionTable& table = entry.result.per_cardinality;
        out << "hypothesis " << entry.name << "\n";
        out << "  k  count  score       cumulative\n";
        for (const DecompositionRow& row : table.rows) {
            char line[96];
            std::snprintf(line, sizeof(line), "  %-2d %-6llu %-11.4f %-11.4f\n", row.k,
                          static_cast<unsigned long long>(row.count), row.score,
                          row.cumulative);
            out << line;
        }
        out << "  direct:          " << f4(table.direct) << "\n";
        out << "  reconstructed:   " << f4(table.reconstructed) << "\n";
        out << "  residual (sum of averaged scores): " << e3(table.residual) << "\n";
        out << "  residual (per-datum form):         " << e3(entry.result.per_datum.residual)
            << "\n";
        out << "  " << (entry.result.pass ? "PASS" : "FAIL") << " (tolerance " << e3(report.tolerance)
            << ")\n";
    }
    out << (report.all_pass ? "identity verified" : "IDENTITY VIOLATION") << "\n";
}

void render_json(const VerifyReport& report, std::ostream& out) {
    ordered_json results = ordered_json::array();
    for (const VerifyEntry& entry : report.entries) {
        results.push_back(ordered_json{{"hypothesis", entry.name},
                                       {"direct", entry.result.per_cardinality.direct},
                                       {"per_cardinality",
                                        decomposition_json(entry.result.per_cardinality)},
                                       {"per_datum", decomposition_json(entry.result.per_datum)},
                                       {"pass", entry.result.pass}});
    }
    out << ordered_json{{"dataset", ordered_json{{"d", report.d}}},
                        {"tolerance", report.tolerance},
                        {"results", results},
                        {"all_pass", report.all_pass}}
               .dump(2)
        << "\n";
}

void render_csv(const VerifyReport& report, std::ostream& out) {
    out << "hypothesis,k,count,score,cumulative\n";
    for (const VerifyEntry& entry : report.entries) {
        decomposition_csv(entry.name, entry.result.per_cardinality, out);
    }
}

void render_text(const SubsetsReport& report, std::ostream& out) {
    out << "dataset: d=" << report.d << "\n";
    for (const SubsetsEntry& entry : report.entries) {
        out << "hypothesis " << entry.name << "\n";
        out << "  k  count  score       cumulative\n";
        for (const DecompositionRow& row : entry.table.rows) {
            char line[96];
            std::snprintf(line, sizeof(line), "  %-2d %-6llu %-11.4f %-11.4f\n", row.k,
                          static_cast<unsigned long long>(row.count), row.score,
                          row.cumulative);
            out << line;
        }
    }
}

void render_json(const SubsetsReport& report, std::ostream& out) {
    ordered_json results = ordered_json::array();
    for (const SubsetsEntry& entry : report.entries) {
        results.push_back(
            ordered_json{{"hypothesis", entry.name}, {"table", decomposition_json(entry.table)}});
    }
    out << ordered_json{{"dataset", ordered_json{{"d", report.d}}}, {"results", results}}.dump(2)
        << "\n";
}

void render_csv(const SubsetsReport& report, std::ostream& out) {
    out << "hypothesis,k,count,score,cumulative\n";
    for (const SubsetsEntry& entry : report.entries) {
        decomposition_csv(entry.name, entry.table, out);
    }
}

void render_text(const CompareReport& report, std::ostream& out) {
    out << "dataset: d=" << report.d << "\n";
    out << "hypothesis            prior    log-lik    posterior  log-BF     WoE(dB)\n";
    for (const EvidenceRow& row : report.evidence.rows) {
        char line[160];
        std::snprintf(line, sizeof(line), "%-21s %-8.4f %-10.4f %-10.4f %-10.4f %-10.4f\n",
                      row.name.c_str(), row.prior, row.log_likelihood, row.posterior,
                      row.log_bayes_factor, row.weight_of_evidence_db);
        out << line;
    }
    out << "pairwise relative log Bayes factors (row vs column):\n";
    for (std::size_t a = 0; a < report.evidence.pairwise_log_bf.size(); ++a) {
        out << "  " << report.evidence.rows[a].name << ":";
        for (double v : report.evidence.pairwise_log_bf[a]) {
            out << ' ' << f4(v);
        }
        out << "\n";
    }
}

void render_json(const CompareReport& report, std::ostream& out) {
    ordered_json results = ordered_json::array();
    for (std::size_t h = 0; h < report.evidence.rows.size(); ++h) {
        const EvidenceRow& row = report.evidence.rows[h];
        results.push_back(ordered_json{{"hypothesis", row.name},
                                       {"prior", row.prior},
                                       {"log_likelihood", row.log_likelihood},
                                       {"posterior", row.posterior},
                                       {"log_bayes_factor", row.log_bayes_factor},
                                       {"weight_of_evidence_db", row.weight_of_evidence_db},
                                       {"relative_log_bf", report.evidence.pairwise_log_bf[h]}});
    }
    out << ordered_json{{"dataset", ordered_json{{"d", report.d}}}, {"results", results}}.dump(2)
        << "\n";
}

void render_csv(const CompareReport& report, std::ostream& out) {
    out << "hypothesis,prior,log_likelihood,posterior,log_bayes_factor,weight_of_evidence_db\n";
    for (const EvidenceRow& row : report.evidence.rows) {
        out << row.name << ',' << g17(row.prior) << ',' << g17(row.log_likelihood) << ','
            << g17(row.posterior) << ',' << g17(row.log_bayes_factor) << ','
            << g17(row.weight_of_evidence_db) << '\n';
    }
}

}  // namespace bayescv
