#include "bayescv/core.hpp"

#include <algorithm>

namespace bayescv {

Dataset make_dataset(std::vector<double> values, int max_data) {
    if (values.empty()) {
        throw ConfigError("dataset is empty; at least one datum is required");
    }
    if (max_data < 1 || max_data > kHardMaxData) {
        throw ConfigError("d-max must be in [1, " + std::to_string(kHardMaxData) + "]");
    }
    if (static_cast<int>(values.size()) > max_data) {
        throw ConfigError("dataset capacity exceeded: d=" + std::to_string(values.size()) +
                          " is over the configured d-max=" + std::to_string(max_data) +
                          " (raise --d-max, hard cap " + std::to_string(kHardMaxData) + ")");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw ConfigError("datum " + std::to_string(i + 1) + " is not a finite number");
        }
    }
    return Dataset{std::move(values)};
}

double stable_log_sum(std::span<const double> log_terms) {
    if (log_terms.empty()) {
        throw std::invalid_argument("stable_log_sum: empty input");
    }
    double max_term = kNegInf;
    for (double t : log_terms) {
        max_term = std::max(max_term, t);
    }
    if (max_term == kNegInf) {
        return kNegInf;
    }
    KahanSum acc;
    for (double t : log_terms) {
        acc.add(std::exp(t - max_term));
    }
    return max_term + std::log(acc.value());
}

double stable_mean(std::span<const double> terms) {
    if (terms.empty()) {
        throw std::invalid_argument("stable_mean: empty input");
    }
    KahanSum acc;
    for (double t : terms) {
        acc.add(t);
    }
    return acc.value() / static_cast<double>(terms.size());
}

namespace {
// 10 / ln(10): natural-log difference -> decibels.
constexpr double kDbPerNat = 4.3429448190325175;
}  // namespace

Decibels to_decibels(double log_ratio) { return Decibels{log_ratio * kDbPerNat}; }

double from_decibels(Decibels db) { return db.value / kDbPerNat; }

double binomial(int n, int k) {
    if (n < 0 || n > kHardMaxData || k < 0 || k > n) {
        throw std::invalid_argument("binomial: arguments out of range");
    }
    // Pascal row in exact integer arithmetic; n <= 26 never overflows.
    std::uint64_t c = 1;
    for (int j = 1; j <= k; ++j) {
        c = c * static_cast<std::uint64_t>(n - k + j) / static_cast<std::uint64_t>(j);
    }
    return static_cast<double>(c);
}

}  // namespace bayescv
