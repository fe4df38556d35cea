#include "bayescv/evidence.hpp"

#include <cmath>

namespace bayescv {

void validate_set(const HypothesisSet& set, int min_size) {
    if (set.hypotheses.size() != set.priors.size()) {
        throw ConfigError("every hypothesis in a set needs a prior probability");
    }
    if (static_cast<int>(set.hypotheses.size()) < min_size) {
        throw ConfigError("hypothesis set needs at least " + std::to_string(min_size) +
                          " hypotheses");
    }
    double sum = 0.0;
    for (double p : set.priors) {
        if (!std::isfinite(p) || p < 0.0) {
            throw ConfigError("priors must be finite and >= 0");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw ConfigError("priors must sum to 1 (got " + std::to_string(sum) + ")");
    }
    for (const Hypothesis& h : set.hypotheses) {
        validate_params(h.params);
    }
}

std::vector<double> posterior_probabilities(std::span<const double> log_likelihoods,
                                            std::span<const double> priors) {
    if (log_likelihoods.size() != priors.size() || log_likelihoods.empty()) {
        throw std::invalid_argument("posterior_probabilities: mismatched inputs");
    }
    std::vector<double> joint(log_likelihoods.size());
    for (std::size_t h = 0; h < joint.size(); ++h) {
        joint[h] = log_likelihoods[h] + std::log(priors[h]);
    }
    const double normalizer = stable_log_sum(joint);
    if (normalizer == kNegInf) {
        throw DataModelError(
            "degenerate evidence: every hypothesis with positive prior assigns the data "
            "probability zero");
    }
    std::vector<double> posterior(joint.size());
    for (std::size_t h = 0; h < joint.size(); ++h) {
        posterior[h] = std::exp(joint[h] - normalizer);
    }
    return posterior;
}

double relative_log_bayes_factor(const Hypothesis& a, const Hypothesis& b,
                                 const Dataset& data) {
    const double log_a = log_marginal(a, data.full(), data);
    const double log_b = log_marginal(b, data.full(), data);
    if (log_a == kNegInf && log_b == kNegInf) {
        throw DataModelError("relative Bayes factor is indeterminate: both marginals are zero");
    }
    return log_a - log_b;
}

double nonrelative_log_bayes_factor(std::span<const double> log_likelihoods,
                                    std::span<const double> priors, int h) {
    const int n = static_cast<int>(log_likelihoods.size());
    if (n < 2 || static_cast<int>(priors.size()) != n || h < 0 || h >= n) {
        throw std::invalid_argument("nonrelative_log_bayes_factor: bad arguments");
    }
    if (!(priors[h] > 0.0) || !(priors[h] < 1.0)) {
        throw ConfigError("non-relative Bayes factor needs 0 < prior < 1 for the hypothesis");
    }
    std::vector<double> rest;
    rest.reserve(n - 1);
    for (int other = 0; other < n; ++other) {
        if (other != h) {
            rest.push_back(log_likelihoods[other] + std::log(priors[other]));
        }
    }
    const double denominator = stable_log_sum(rest);
    if (denominator == kNegInf) {
        throw DataModelError(
            "non-relative Bayes factor is undefined: the alternatives assign the data "
            "probability zero");
    }
    return log_likelihoods[h] + std::log1p(-priors[h]) - denominator;
}

Decibels weight_of_evidence_db(double log_bayes_factor) {
    return to_decibels(log_bayes_factor);
}

EvidenceReport compare_hypotheses(const HypothesisSet& set, const Dataset& data) {
    validate_set(set, 2);
    const int n = static_cast<int>(set.hypotheses.size());
    std::vector<double> log_lik(n);
    for (int h = 0; h < n; ++h) {
        check_compatible(set.hypotheses[h], data);
        log_lik[h] = log_marginal(set.hypotheses[h], data.full(), data);
    }
    const std::vector<double> posterior = posterior_probabilities(log_lik, set.priors);

    EvidenceReport report;
    report.rows.resize(n);
    report.pairwise_log_bf.assign(n, std::vector<double>(n, 0.0));
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            report.pairwise_log_bf[a][b] = log_lik[a] - log_lik[b];
        }
    }
    for (int h = 0; h < n; ++h) {
        EvidenceRow& row = report.rows[h];
        row.name = set.hypotheses[h].name;
        row.prior = set.priors[h];
        row.log_likelihood = log_lik[h];
        row.posterior = posterior[h];
        row.log_bayes_factor = nonrelative_log_bayes_factor(log_lik, set.priors, h);
        row.weight_of_evidence_db = weight_of_evidence_db(row.log_bayes_factor).value;
    }
    return report;
}

}  // namespace bayescv
