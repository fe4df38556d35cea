#include "bayescv/models.hpp"

#include <cmath>
#include <string>

#include "lattice_kernels.hpp"

namespace bayescv {

namespace {

bool is_label(double v, int num_categories) {
    return v == std::floor(v) && v >= 0.0 && v < static_cast<double>(num_categories);
}

void require(bool ok, const std::string& message) {
    if (!ok) {
        throw ConfigError(message);
    }
}

}  // namespace

const char* kind_name(const ModelParams& params) {
    struct Visitor {
        const char* operator()(const SimpleCategorical&) const { return "simple_categorical"; }
        const char* operator()(const SimpleGaussian&) const { return "simple_gaussian"; }
        const char* operator()(const BetaBernoulli&) const { return "beta_bernoulli"; }
        const char* operator()(const DirichletCategorical&) const {
            return "dirichlet_categorical";
        }
        const char* operator()(const NormalKnownVariance&) const {
            return "normal_known_variance";
        }
    };
    return std::visit(Visitor{}, params);
}

void validate_params(const ModelParams& params) {
    struct Visitor {
        void operator()(const SimpleCategorical& m) const {
            require(!m.probs.empty(), "simple_categorical: probability table is empty");
            require(static_cast<int>(m.probs.size()) <= kMaxCategories,
                    "simple_categorical: at most " + std::to_string(kMaxCategories) +
                        " categories supported");
            double sum = 0.0;
            for (double p : m.probs) {
                require(std::isfinite(p) && p >= 0.0,
                        "simple_categorical: probabilities must be finite and >= 0");
                sum += p;
            }
            require(std::abs(sum - 1.0) <= 1e-12,
                    "simple_categorical: probabilities must sum to 1 (got " +
                        std::to_string(sum) + ")");
        }
        void operator()(const SimpleGaussian& m) const {
            require(std::isfinite(m.mean), "simple_gaussian: mean must be finite");
            require(std::isfinite(m.stddev) && m.stddev > 0.0,
                    "simple_gaussian: stddev must be > 0");
        }
        void operator()(const BetaBernoulli& m) const {
            // Improper priors are rejected here, not worked around downstream.
            require(std::isfinite(m.alpha) && m.alpha > 0.0, "beta_bernoulli: alpha must be > 0");
            require(std::isfinite(m.beta) && m.beta > 0.0, "beta_bernoulli: beta must be > 0");
        }
        void operator()(const DirichletCategorical& m) const {
            require(!m.alpha.empty(), "dirichlet_categorical: concentration vector is empty");
            require(static_cast<int>(m.alpha.size()) <= kMaxCategories,
                    "dirichlet_categorical: at most " + std::to_string(kMaxCategories) +
                        " categories supported");
            for (double a : m.alpha) {
                require(std::isfinite(a) && a > 0.0,
                        "dirichlet_categorical: concentrations must be > 0");
            }
        }
        void operator()(const NormalKnownVariance& m) const {
            require(std::isfinite(m.data_variance) && m.data_variance > 0.0,
                    "normal_known_variance: data_variance must be > 0");
            require(std::isfinite(m.prior_mean), "normal_known_variance: prior_mean must be finite");
            require(std::isfinite(m.prior_variance) && m.prior_variance > 0.0,
                    "normal_known_variance: prior_variance must be > 0");
        }
    };
    std::visit(Visitor{}, params);
}

void check_compatible(const Hypothesis& hypothesis, const Dataset& data) {
    struct Visitor {
        const Dataset& data;
        const std::string& name;

        void mismatch(const std::string& detail) const {
            throw DataModelError("hypothesis '" + name + "': " + detail);
        }
        void operator()(const SimpleCategorical& m) const {
            for (double v : data.values) {
                if (!is_label(v, static_cast<int>(m.probs.size()))) {
                    mismatch("expects categorical labels in 0.." +
                             std::to_string(m.probs.size() - 1));
                }
            }
        }
        void operator()(const SimpleGaussian&) const {}  // any finite real
        void operator()(const BetaBernoulli&) const {
            for (double v : data.values) {
                if (v != 0.0 && v != 1.0) {
                    mismatch("expects binary data in {0,1}");
                }
            }
        }
        void operator()(const DirichletCategorical& m) const {
            for (double v : data.values) {
                if (!is_label(v, static_cast<int>(m.alpha.size()))) {
                    mismatch("expects categorical labels in 0.." +
                             std::to_string(m.alpha.size() - 1));
                }
            }
        }
        void operator()(const NormalKnownVariance&) const {}  // any finite real
    };
    std::visit(Visitor{data, hypothesis.name}, hypothesis.params);
}

double log_marginal(const Hypothesis& hypothesis, SubsetMask subset, const Dataset& data) {
    const int d = data.size();
    if (d < static_cast<int>(sizeof(SubsetMask) * 8) && (subset >> d) != 0) {
        throw std::invalid_argument("log_marginal: subset references an out-of-range index");
    }
    check_compatible(hypothesis, data);
    return std::visit(
        [&](const auto& params) {
            return detail::kernel_log_marginal(detail::make_kernel(params, data), subset, d);
        },
        hypothesis.params);
}

double log_predictive(const Hypothesis& hypothesis, int index, SubsetMask given,
                      const Dataset& data) {
    if (index < 0 || index >= data.size()) {
        throw std::invalid_argument("log_predictive: datum index out of range");
    }
    if (contains(given, index)) {
        throw std::invalid_argument("log_predictive: datum is part of the conditioning subset");
    }
    const double conditioning = log_marginal(hypothesis, given, data);
    if (conditioning == kNegInf) {
        throw DataModelError("log_predictive: conditioning subset has marginal probability zero");
    }
    const double joint =
        log_marginal(hypothesis, given | (SubsetMask{1} << index), data);
    return joint - conditioning;
}

}  // namespace bayescv
