#pragma once

// Pluggable predictive engines. Every hypothesis exposes the log marginal
// likelihood of any data subset through sufficient statistics; conditional
// predictives are marginal differences, never separately coded formulas.

#include <string>
#include <variant>
#include <vector>

#include "bayescv/core.hpp"

namespace bayescv {

// Categorical kinds keep per-category counts in fixed-size lattice stats.
inline constexpr int kMaxCategories = 64;

/// Fixed probability table over K categories; data are labels in 0..K-1.
struct SimpleCategorical {
    std::vector<double> probs;
};

/// Fixed-parameter normal; data are reals, i.i.d. under the hypothesis.
struct SimpleGaussian {
    double mean = 0.0;
    double stddev = 1.0;
};

/// Bernoulli data in {0,1} with a Beta(alpha, beta) parameter prior.
struct BetaBernoulli {
    double alpha = 1.0;
    double beta = 1.0;
};

/// Categorical data with a Dirichlet(alpha) parameter prior.
struct DirichletCategorical {
    std::vector<double> alpha;
};

/// Real data x ~ N(theta, data_variance) with theta ~ N(prior_mean, prior_variance).
struct NormalKnownVariance {
    double data_variance = 1.0;
    double prior_mean = 0.0;
    double prior_variance = 1.0;
};

using ModelParams = std::variant<SimpleCategorical, SimpleGaussian, BetaBernoulli,
                                 DirichletCategorical, NormalKnownVariance>;

struct Hypothesis {
    std::string name;
    ModelParams params;
};

/// Canonical kind string ("beta_bernoulli", ...), as used in config files.
const char* kind_name(const ModelParams& params);

/// Throws ConfigError if the parameters violate the kind's invariants
/// (probabilities not summing to one, non-positive concentrations, ...).
void validate_params(const ModelParams& params);

/// Throws DataModelError unless every datum has the value kind the
/// hypothesis expects (binary / categorical label below K / finite real).
void check_compatible(const Hypothesis& hypothesis, const Dataset& data);

/// log P(D_subset | H): closed-form marginal of the masked data.
/// Empty subset returns exactly 0. Throws DataModelError on kind mismatch,
/// std::invalid_argument if the mask references indices past the dataset.
double log_marginal(const Hypothesis& hypothesis, SubsetMask subset, const Dataset& data);

/// log P(D_index | D_given, H) = log_marginal(given + index) - log_marginal(given).
/// Throws std::invalid_argument if index is in `given`, DataModelError if the
/// conditioning subset has marginal probability zero.
double log_predictive(const Hypothesis& hypothesis, int index, SubsetMask given,
                      const Dataset& data);

}  // namespace bayescv
