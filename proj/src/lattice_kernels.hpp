#pragma once

// Internal per-kind evaluation kernels shared by models.cpp and lattice.cpp.
//
// Each kernel carries precomputed per-datum quantities and lgamma tables for
// one (hypothesis, dataset) pair, and evaluates the closed-form log marginal
// from a small trivially-copyable Stats value. Stats for a subset are defined
// by adding datums in descending index order (the lowest-bit parent chain),
// which makes every table entry a pure function of its mask regardless of how
// the lattice build is partitioned across threads.

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "bayescv/core.hpp"
#include "bayescv/models.hpp"

namespace bayescv::detail {

struct CategoricalCounts {
    std::uint32_t n = 0;
    std::array<std::uint8_t, kMaxCategories> counts{};
};

// Per-category counts with fixed per-category log-probabilities. The count
// vector is the exact sufficient statistic, so permuting the data leaves
// every subset marginal unchanged bit-for-bit.
struct SimpleCategoricalKernel {
    struct Stats {
        CategoricalCounts c;
    };

    std::vector<std::uint8_t> label;  // per datum
    int num_categories = 0;
    std::array<double, kMaxCategories> log_prob{};

    Stats add(Stats s, int i) const {
        s.c.n += 1;
        s.c.counts[label[i]] += 1;
        return s;
    }
    Stats remove(Stats s, int i) const {
        s.c.n -= 1;
        s.c.counts[label[i]] -= 1;
        return s;
    }
    double log_marginal(const Stats& s) const {
        double acc = 0.0;
        for (int k = 0; k < num_categories; ++k) {
            if (s.c.counts[k] != 0) {  // skip: 0 * -inf would poison the sum
                acc += s.c.counts[k] * log_prob[k];
            }
        }
        return acc;
    }
};

inline SimpleCategoricalKernel make_kernel(const SimpleCategorical& model, const Dataset& data) {
    SimpleCategoricalKernel k;
    k.num_categories = static_cast<int>(model.probs.size());
    for (int c = 0; c < k.num_categories; ++c) {
        k.log_prob[c] = std::log(model.probs[c]);
    }
    k.label.reserve(data.values.size());
    for (double v : data.values) {
        k.label.push_back(static_cast<std::uint8_t>(v));
    }
    return k;
}

// Sum of precomputed per-datum log-densities.
struct LogPdfSumKernel {
    struct Stats {
        double sum = 0.0;
    };

    std::vector<double> log_pdf;  // one value per datum

    Stats add(Stats s, int i) const { return {s.sum + log_pdf[i]}; }
    Stats remove(Stats s, int i) const { return {s.sum - log_pdf[i]}; }
    double log_marginal(const Stats& s) const { return s.sum; }
};

inline LogPdfSumKernel make_kernel(const SimpleGaussian& model, const Dataset& data) {
    LogPdfSumKernel k;
    const double var = model.stddev * model.stddev;
    const double norm = -0.5 * std::log(2.0 * M_PI * var);
    k.log_pdf.reserve(data.values.size());
    for (double v : data.values) {
        const double dev = v - model.mean;
        k.log_pdf.push_back(norm - dev * dev / (2.0 * var));
    }
    return k;
}

struct BetaBernoulliKernel {
    struct Stats {
        std::uint32_t n = 0;
        std::uint32_t ones = 0;
    };

    std::vector<std::uint8_t> is_one;            // per datum
    std::vector<double> lg_alpha;                // lgamma(alpha + j), j = 0..d
    std::vector<double> lg_beta;                 // lgamma(beta + j)
    std::vector<double> lg_total;                // lgamma(alpha + beta + j)
    double norm = 0.0;                           // -log B(alpha, beta)

    Stats add(Stats s, int i) const { return {s.n + 1, s.ones + is_one[i]}; }
    Stats remove(Stats s, int i) const { return {s.n - 1, s.ones - is_one[i]}; }
    double log_marginal(const Stats& s) const {
        return norm + lg_alpha[s.ones] + lg_beta[s.n - s.ones] - lg_total[s.n];
    }
};

inline BetaBernoulliKernel make_kernel(const BetaBernoulli& model, const Dataset& data) {
    BetaBernoulliKernel k;
    const int d = data.size();
    k.is_one.reserve(data.values.size());
    for (double v : data.values) {
        k.is_one.push_back(v == 1.0 ? 1 : 0);
    }
    k.lg_alpha.resize(d + 1);
    k.lg_beta.resize(d + 1);
    k.lg_total.resize(d + 1);
    for (int j = 0; j <= d; ++j) {
        k.lg_alpha[j] = std::lgamma(model.alpha + j);
        k.lg_beta[j] = std::lgamma(model.beta + j);
        k.lg_total[j] = std::lgamma(model.alpha + model.beta + j);
    }
    k.norm = k.lg_total[0] - k.lg_alpha[0] - k.lg_beta[0];
    return k;
}

struct DirichletCategoricalKernel {
    struct Stats {
        CategoricalCounts c;
    };

    std::vector<std::uint8_t> label;             // per datum
    int num_categories = 0;
    std::vector<double> lg_total;                // lgamma(sum(alpha) + j)
    std::vector<std::vector<double>> lg_cat;     // lgamma(alpha_k + j) per category

    Stats add(Stats s, int i) const {
        s.c.n += 1;
        s.c.counts[label[i]] += 1;
        return s;
    }
    Stats remove(Stats s, int i) const {
        s.c.n -= 1;
        s.c.counts[label[i]] -= 1;
        return s;
    }
    double log_marginal(const Stats& s) const {
        double acc = lg_total[0] - lg_total[s.c.n];
        for (int k = 0; k < num_categories; ++k) {
            acc += lg_cat[k][s.c.counts[k]] - lg_cat[k][0];
        }
        return acc;
    }
};

inline DirichletCategoricalKernel make_kernel(const DirichletCategorical& model,
                                              const Dataset& data) {
    DirichletCategoricalKernel k;
    const int d = data.size();
    k.num_categories = static_cast<int>(model.alpha.size());
    k.label.reserve(data.values.size());
    for (double v : data.values) {
        k.label.push_back(static_cast<std::uint8_t>(v));
    }
    double total = 0.0;
    for (double a : model.alpha) {
        total += a;
    }
    k.lg_total.resize(d + 1);
    for (int j = 0; j <= d; ++j) {
        k.lg_total[j] = std::lgamma(total + j);
    }
    k.lg_cat.resize(k.num_categories);
    for (int c = 0; c < k.num_categories; ++c) {
        k.lg_cat[c].resize(d + 1);
        for (int j = 0; j <= d; ++j) {
            k.lg_cat[c][j] = std::lgamma(model.alpha[c] + j);
        }
    }
    return k;
}

struct NormalKnownVarianceKernel {
    struct Stats {
        std::uint32_t n = 0;
        double sum = 0.0;
        double sum_sq = 0.0;
    };

    std::vector<double> value;                   // per datum
    double inv_data_var = 1.0;
    double inv_prior_var = 1.0;
    double mean_over_var = 0.0;                  // prior_mean / prior_variance
    double mean_sq_over_var = 0.0;               // prior_mean^2 / prior_variance
    double prior_var = 1.0;
    double log_2pi_data_var = 0.0;

    Stats add(Stats s, int i) const {
        return {s.n + 1, s.sum + value[i], s.sum_sq + value[i] * value[i]};
    }
    Stats remove(Stats s, int i) const {
        return {s.n - 1, s.sum - value[i], s.sum_sq - value[i] * value[i]};
    }
    double log_marginal(const Stats& s) const {
        // Gaussian convolution of the prior with the subset likelihood.
        const double a = s.n * inv_data_var + inv_prior_var;
        const double b = s.sum * inv_data_var + mean_over_var;
        const double c = s.sum_sq * inv_data_var + mean_sq_over_var;
        return -0.5 * s.n * log_2pi_data_var - 0.5 * std::log(prior_var * a) +
               0.5 * (b * b / a - c);
    }
};

inline NormalKnownVarianceKernel make_kernel(const NormalKnownVariance& model,
                                             const Dataset& data) {
    NormalKnownVarianceKernel k;
    k.value = data.values;
    k.inv_data_var = 1.0 / model.data_variance;
    k.inv_prior_var = 1.0 / model.prior_variance;
    k.mean_over_var = model.prior_mean / model.prior_variance;
    k.mean_sq_over_var = model.prior_mean * model.prior_mean / model.prior_variance;
    k.prior_var = model.prior_variance;
    k.log_2pi_data_var = std::log(2.0 * M_PI * model.data_variance);
    return k;
}

// Folds the mask's datums into Stats along the canonical chain (descending
// index), matching the lattice build bit-for-bit.
template <class Kernel>
double kernel_log_marginal(const Kernel& kernel, SubsetMask mask, int d) {
    if (mask == 0) {
        return 0.0;
    }
    typename Kernel::Stats stats{};
    for (int i = d - 1; i >= 0; --i) {
        if (contains(mask, i)) {
            stats = kernel.add(stats, i);
        }
    }
    return kernel.log_marginal(stats);
}

}  // namespace bayescv::detail
