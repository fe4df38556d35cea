#pragma once

// Shared domain types: datasets, subset masks, log-space accumulation.
// All log quantities are natural-log; decibels are a reporting conversion.

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bayescv {

inline constexpr int kDefaultMaxData = 20;
// Hard cap: the full-lattice table (2^d doubles) is the binding constraint.
inline constexpr int kHardMaxData = 26;

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Invalid configuration or usage; CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Data incompatible with a model (wrong value kind, zero-probability
/// conditioning, degenerate evidence); CLI maps this to exit code 3.
struct DataModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Subset of datum indices encoded as a bit mask; bit i set means datum i
/// is included. Valid masks are < 2^d.
using SubsetMask = std::uint32_t;

inline int cardinality(SubsetMask mask) { return std::popcount(mask); }

inline SubsetMask full_mask(int d) { return (SubsetMask{1} << d) - 1u; }

inline bool contains(SubsetMask mask, int index) { return (mask >> index) & 1u; }

inline SubsetMask without(SubsetMask mask, int index) {
    return mask & ~(SubsetMask{1} << index);
}

/// Ordered, exchangeable scalar data. Values are finite doubles; whether they
/// are read as binary, categorical labels or reals depends on the model kind.
struct Dataset {
    std::vector<double> values;

    int size() const { return static_cast<int>(values.size()); }
    SubsetMask full() const { return full_mask(size()); }
};

/// Validates and wraps raw values: 1 <= d <= max_data, every value finite.
Dataset make_dataset(std::vector<double> values, int max_data = kDefaultMaxData);

/// Compensated (Kahan) accumulator. Addition order defines the result
/// bit-for-bit, so every caller must feed terms in a canonical order.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

/// log(sum(exp(t))) with max-shift; deterministic for a fixed input order.
/// Returns -inf iff every term is -inf. Input must be non-empty, NaN-free.
double stable_log_sum(std::span<const double> log_terms);

/// Arithmetic mean via compensated summation in input (ascending index) order.
double stable_mean(std::span<const double> terms);

/// 10*log10 of a probability ratio.
struct Decibels {
    double value = 0.0;
};

Decibels to_decibels(double log_ratio);
double from_decibels(Decibels db);

/// Exact binomial coefficient for n <= kHardMaxData, returned as double.
double binomial(int n, int k);

}  // namespace bayescv
