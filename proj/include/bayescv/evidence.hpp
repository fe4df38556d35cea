#pragma once

// Hypothesis-comparison calculus: posteriors over an exhaustive hypothesis
// set, relative and non-relative Bayes factors, weights of evidence in
// decibels. Exhaustivity itself is the user's declaration; only its numeric
// consequence (priors summing to one) is enforced here.

#include <span>
#include <string>
#include <vector>

#include "bayescv/core.hpp"
#include "bayescv/models.hpp"

namespace bayescv {

struct HypothesisSet {
    std::vector<Hypothesis> hypotheses;
    std::vector<double> priors;  // aligned with hypotheses
};

/// Throws ConfigError unless priors are >= 0, sum to 1 within 1e-12, and the
/// set holds at least `min_size` hypotheses.
void validate_set(const HypothesisSet& set, int min_size = 1);

/// Posterior probabilities from log-likelihoods and priors:
/// post_h proportional to exp(log_lik_h + log prior_h), normalized with
/// stable_log_sum. Throws DataModelError if every term is -inf.
std::vector<double> posterior_probabilities(std::span<const double> log_likelihoods,
                                            std::span<const double> priors);

/// log P(D|a) - log P(D|b); error if both marginals are -inf.
double relative_log_bayes_factor(const Hypothesis& a, const Hypothesis& b,
                                 const Dataset& data);

/// Non-relative log Bayes factor for hypothesis h against the rest of the
/// set: log[P(D|H_h)(1 - P(H_h))] - log[sum_{h' != h} P(D|H_h') P(H_h')].
/// Requires 0 < prior_h < 1 and at least 2 hypotheses.
double nonrelative_log_bayes_factor(std::span<const double> log_likelihoods,
                                    std::span<const double> priors, int h);

/// Log Bayes factor reported in decibels.
Decibels weight_of_evidence_db(double log_bayes_factor);

struct EvidenceRow {
    std::string name;
    double prior = 0.0;
    double log_likelihood = 0.0;
    double posterior = 0.0;
    double log_bayes_factor = 0.0;       // non-relative (Eq.-(4) style)
    double weight_of_evidence_db = 0.0;  // the same factor in decibels
};

struct EvidenceReport {
    std::vector<EvidenceRow> rows;
    // pairwise[a][b] = log P(D|a) - log P(D|b); antisymmetric by construction.
    std::vector<std::vector<double>> pairwise_log_bf;
};

/// Full comparison over the set; needs >= 2 hypotheses with valid priors.
EvidenceReport compare_hypotheses(const HypothesisSet& set, const Dataset& data);

}  // namespace bayescv
