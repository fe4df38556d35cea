#include "bayescv/lattice.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "lattice_kernels.hpp"

namespace bayescv {

namespace {

// Work is split into fixed mask-range blocks chosen from d alone, never from
// the thread count, so reductions merge in one canonical order.
constexpr int kBlockBits = 14;

int resolve_threads(int threads) {
    if (threads < 0) {
        throw ConfigError("threads must be >= 1");
    }
    return threads == 0 ? omp_get_max_threads() : threads;
}

template <class Kernel>
void fill_table(const Kernel& kernel, int d, int threads, std::vector<double>& table,
                std::uint64_t& eval_count) {
    const std::size_t size = std::size_t{1} << d;
    table.assign(size, 0.0);
    const int low_bits = std::min(d, kBlockBits);
    const std::uint32_t block_size = std::uint32_t{1} << low_bits;
    const std::int64_t num_blocks = std::int64_t{1} << (d - low_bits);
    std::uint64_t evals = 0;

#pragma omp parallel num_threads(threads) reduction(+ : evals)
    {
        std::vector<typename Kernel::Stats> stats(block_size);
#pragma omp for schedule(static)
        for (std::int64_t block = 0; block < num_blocks; ++block) {
            const SubsetMask prefix = static_cast<SubsetMask>(block) << low_bits;
            typename Kernel::Stats seed{};
            for (int bit = d - 1; bit >= low_bits; --bit) {
                if (contains(prefix, bit)) {
                    seed = kernel.add(seed, bit);
                }
            }
            stats[0] = seed;
            if (prefix != 0) {
                table[prefix] = kernel.log_marginal(seed);
                ++evals;
            }
            for (std::uint32_t local = 1; local < block_size; ++local) {
                stats[local] =
                    kernel.add(stats[local & (local - 1)], std::countr_zero(local));
                table[prefix | local] = kernel.log_marginal(stats[local]);
                ++evals;
            }
        }
    }
    eval_count = evals;
}

template <class Kernel>
void fill_table_serial(const Kernel& kernel, int d, std::vector<double>& table,
                       std::uint64_t& eval_count) {
    const std::size_t size = std::size_t{1} << d;
    table.assign(size, 0.0);
    std::vector<typename Kernel::Stats> stats(size);
    for (std::size_t mask = 1; mask < size; ++mask) {
        const int bit = std::countr_zero(mask);
        stats[mask] = kernel.add(stats[mask & (mask - 1)], bit);
        table[mask] = kernel.log_marginal(stats[mask]);
        ++eval_count;
    }
}

void check_cache(const MarginalCache& cache) {
    if (cache.d < 1 || cache.table.size() != (std::size_t{1} << cache.d)) {
        throw std::invalid_argument("marginal cache is inconsistent with its dataset size");
    }
}

// Both decompositions condition on every subset, so a single -inf entry
// anywhere means a zero-probability conditioning set.
void require_finite_marginals(const MarginalCache& cache) {
    for (double v : cache.table) {
        if (v == kNegInf) {
            throw DataModelError(
                "a data subset has marginal probability zero under the hypothesis; "
                "the decomposition is undefined");
        }
    }
}

struct ClassSums {
    std::vector<KahanSum> acc;  // one accumulator per cardinality class

    explicit ClassSums(int classes) : acc(classes) {}
};

// Merges fixed-order chunk partials: per class, chunk sums (and their
// compensation remainders) are folded in ascending chunk order.
std::vector<double> merge_chunks(const std::vector<ClassSums>& chunks, int classes) {
    std::vector<double> totals(classes);
    for (int k = 0; k < classes; ++k) {
        KahanSum total;
        for (const ClassSums& chunk : chunks) {
            total.add(chunk.acc[k].sum);
            total.add(-chunk.acc[k].carry);
        }
        totals[k] = total.value();
    }
    return totals;
}

DecompositionTable finish_table(const MarginalCache& cache, std::vector<DecompositionRow> rows) {
    DecompositionTable table;
    KahanSum running;
    for (DecompositionRow& row : rows) {
        running.add(row.score);
        row.cumulative = running.value();
    }
    table.rows = std::move(rows);
    table.reconstructed = table.rows.empty() ? 0.0 : table.rows.back().cumulative;
    table.direct = cache.full_set();
    table.residual = table.reconstructed - table.direct;
    return table;
}

}  // namespace

MarginalCache build_cache(const Hypothesis& hypothesis, const Dataset& data, int threads) {
    check_compatible(hypothesis, data);
    if (data.size() > kHardMaxData) {
        throw ConfigError("dataset too large for a full subset lattice");
    }
    MarginalCache cache;
    cache.d = data.size();
    const int t = resolve_threads(threads);
    std::visit(
        [&](const auto& params) {
            fill_table(detail::make_kernel(params, data), cache.d, t, cache.table,
                       cache.eval_count);
        },
        hypothesis.params);
    return cache;
}

CvScore loo_score(const MarginalCache& cache) {
    check_cache(cache);
    const int d = cache.d;
    if (d < 2) {
        throw ConfigError("leave-one-out requires at least 2 datums");
    }
    const SubsetMask full = full_mask(d);
    const double log_full = cache.table[full];
    std::vector<double> diffs(d);
    for (int i = 0; i < d; ++i) {
        const double conditioning = cache.table[without(full, i)];
        if (conditioning == kNegInf) {
            throw DataModelError("leave-one-out conditioning subset has probability zero");
        }
        diffs[i] = log_full - conditioning;
    }
    return CvScore{1, stable_mean(diffs), CvScheme::LeaveMOutExhaustive};
}

CvScore leave_m_out_score(const MarginalCache& cache, int m) {
    check_cache(cache);
    const int d = cache.d;
    if (m < 1 || m > d - 1) {
        throw ConfigError("leave-m-out size must be in 1..d-1");
    }
    const SubsetMask full = full_mask(d);
    const double log_full = cache.table[full];
    const double inv_m = 1.0 / static_cast<double>(m);
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(binomial(d, m)));
    // Gosper's hack: held-out masks of popcount m in ascending value order.
    SubsetMask held = full_mask(m);
    while (held <= full) {
        const double conditioning = cache.table[full ^ held];
        if (conditioning == kNegInf) {
            throw DataModelError("held-out complement has marginal probability zero");
        }
        terms.push_back((log_full - conditioning) * inv_m);
        const SubsetMask low = held & (~held + 1u);
        const SubsetMask ripple = held + low;
        held = ripple | (((held ^ ripple) >> 2) / low);
    }
    return CvScore{m, stable_mean(terms), CvScheme::LeaveMOutExhaustive};
}

CvScore kfold_partition_score(const MarginalCache& cache, std::span<const int> fold_of_datum) {
    check_cache(cache);
    const int d = cache.d;
    if (static_cast<int>(fold_of_datum.size()) != d) {
        throw ConfigError("fold assignment must cover every datum");
    }
    int num_folds = 0;
    for (int f : fold_of_datum) {
        if (f < 0) {
            throw ConfigError("fold ids must be >= 0");
        }
        num_folds = std::max(num_folds, f + 1);
    }
    std::vector<SubsetMask> folds(num_folds, 0);
    for (int i = 0; i < d; ++i) {
        folds[fold_of_datum[i]] |= SubsetMask{1} << i;
    }
    int largest = 0;
    for (int f = 0; f < num_folds; ++f) {
        if (folds[f] == 0) {
            throw ConfigError("fold " + std::to_string(f) + " is empty");
        }
        largest = std::max(largest, cardinality(folds[f]));
    }
    if (num_folds < 2) {
        throw ConfigError("k-fold scoring needs at least 2 folds");
    }
    const SubsetMask full = full_mask(d);
    const double log_full = cache.table[full];
    KahanSum acc;
    for (SubsetMask fold : folds) {
        const double conditioning = cache.table[full ^ fold];
        if (conditioning == kNegInf) {
            throw DataModelError("fold complement has marginal probability zero");
        }
        acc.add(log_full - conditioning);
    }
    return CvScore{largest, acc.value() / static_cast<double>(d), CvScheme::KFoldPartition};
}

DecompositionTable per_cardinality_scores(const MarginalCache& cache, int threads) {
    check_cache(cache);
    require_finite_marginals(cache);
    const int d = cache.d;
    const int t = resolve_threads(threads);
    const int chunk_bits = std::min(d, kBlockBits);
    const std::int64_t num_chunks = std::int64_t{1} << (d - chunk_bits);
    const std::size_t chunk_size = std::size_t{1} << chunk_bits;

    std::vector<ClassSums> chunks(num_chunks, ClassSums(d + 1));
    const double* table = cache.table.data();

#pragma omp parallel for schedule(static) num_threads(t)
    for (std::int64_t chunk = 0; chunk < num_chunks; ++chunk) {
        ClassSums& sums = chunks[chunk];
        const std::size_t begin = std::max<std::size_t>(1, chunk * chunk_size);
        const std::size_t end = (chunk + 1) * chunk_size;
        for (std::size_t mask = begin; mask < end; ++mask) {
            const double log_subset = table[mask];
            KahanSum inner;
            SubsetMask rest = static_cast<SubsetMask>(mask);
            while (rest != 0) {
                const SubsetMask low = rest & (~rest + 1u);
                inner.add(log_subset - table[mask ^ low]);
                rest ^= low;
            }
            sums.acc[std::popcount(mask)].add(inner.value());
        }
    }

    const std::vector<double> totals = merge_chunks(chunks, d + 1);
    std::vector<DecompositionRow> rows(d);
    for (int k = 1; k <= d; ++k) {
        const double subsets = binomial(d, k);
        rows[k - 1] = DecompositionRow{k, static_cast<std::uint64_t>(subsets),
                                       totals[k] / (static_cast<double>(k) * subsets), 0.0};
    }
    return finish_table(cache, std::move(rows));
}

DecompositionTable per_datum_decomposition(const MarginalCache& cache, int threads) {
    check_cache(cache);
    require_finite_marginals(cache);
    const int d = cache.d;
    const int t = resolve_threads(threads);
    const int chunk_bits = std::min(d, kBlockBits);
    const std::int64_t num_chunks = std::int64_t{1} << (d - chunk_bits);
    const std::size_t chunk_size = std::size_t{1} << chunk_bits;
    const SubsetMask full = full_mask(d);

    std::vector<ClassSums> chunks(num_chunks, ClassSums(d));
    const double* table = cache.table.data();

#pragma omp parallel for schedule(static) num_threads(t)
    for (std::int64_t chunk = 0; chunk < num_chunks; ++chunk) {
        ClassSums& sums = chunks[chunk];
        const std::size_t begin = chunk * chunk_size;
        const std::size_t end = (chunk + 1) * chunk_size;
        for (std::size_t mask = begin; mask < end; ++mask) {
            const int k = std::popcount(mask);
            if (k == d) {
                continue;  // no datum left to predict
            }
            const double log_conditioning = table[mask];
            KahanSum& acc = sums.acc[k];
            SubsetMask missing = full ^ static_cast<SubsetMask>(mask);
            while (missing != 0) {
                const SubsetMask low = missing & (~missing + 1u);
                acc.add(table[mask | low] - log_conditioning);
                missing ^= low;
            }
        }
    }

    const std::vector<double> totals = merge_chunks(chunks, d);
    std::vector<DecompositionRow> rows(d);
    for (int k = 0; k < d; ++k) {
        const double subsets = binomial(d - 1, k);
        rows[k] = DecompositionRow{k, static_cast<std::uint64_t>(subsets),
                                   totals[k] / (static_cast<double>(d) * subsets), 0.0};
    }
    return finish_table(cache, std::move(rows));
}

VerifyResult verify_identity(const Hypothesis& hypothesis, const Dataset& data,
                             double tolerance, int threads) {
    if (!(tolerance > 0.0)) {
        throw ConfigError("tolerance must be > 0");
    }
    const MarginalCache cache = build_cache(hypothesis, data, threads);
    VerifyResult result;
    result.per_cardinality = per_cardinality_scores(cache, threads);
    result.per_datum = per_datum_decomposition(cache, threads);
    result.tolerance = tolerance;
    result.effective_tolerance =
        tolerance * std::max(1.0, std::abs(result.per_cardinality.direct));
    result.pass = std::abs(result.per_cardinality.residual) <= result.effective_tolerance &&
                  std::abs(result.per_datum.residual) <= result.effective_tolerance;
    return result;
}

namespace reference {

MarginalCache build_cache_serial(const Hypothesis& hypothesis, const Dataset& data) {
    check_compatible(hypothesis, data);
    if (data.size() > kHardMaxData) {
        throw ConfigError("dataset too large for a full subset lattice");
    }
    MarginalCache cache;
    cache.d = data.size();
    std::visit(
        [&](const auto& params) {
            fill_table_serial(detail::make_kernel(params, data), cache.d, cache.table,
                              cache.eval_count);
        },
        hypothesis.params);
    return cache;
}

DecompositionTable per_cardinality_serial(const MarginalCache& cache) {
    check_cache(cache);
    require_finite_marginals(cache);
    const int d = cache.d;
    const std::size_t size = std::size_t{1} << d;
    std::vector<KahanSum> classes(d + 1);
    for (std::size_t mask = 1; mask < size; ++mask) {
        const double log_subset = cache.table[mask];
        KahanSum inner;
        SubsetMask rest = static_cast<SubsetMask>(mask);
        while (rest != 0) {
            const SubsetMask low = rest & (~rest + 1u);
            inner.add(log_subset - cache.table[mask ^ low]);
            rest ^= low;
        }
        classes[std::popcount(mask)].add(inner.value());
    }
    std::vector<DecompositionRow> rows(d);
    for (int k = 1; k <= d; ++k) {
        const double subsets = binomial(d, k);
        rows[k - 1] = DecompositionRow{k, static_cast<std::uint64_t>(subsets),
                                       classes[k].value() / (static_cast<double>(k) * subsets),
                                       0.0};
    }
    return finish_table(cache, std::move(rows));
}

DecompositionTable per_datum_serial(const MarginalCache& cache) {
    check_cache(cache);
    require_finite_marginals(cache);
    const int d = cache.d;
    const std::size_t size = std::size_t{1} << d;
    const SubsetMask full = full_mask(d);
    std::vector<KahanSum> classes(d);
    for (std::size_t mask = 0; mask < size; ++mask) {
        const double log_conditioning = cache.table[mask];
        const int k = std::popcount(mask);
        if (k == d) {
            continue;
        }
        SubsetMask missing = full ^ static_cast<SubsetMask>(mask);
        while (missing != 0) {
            const SubsetMask low = missing & (~missing + 1u);
            classes[k].add(cache.table[mask | low] - log_conditioning);
            missing ^= low;
        }
    }
    std::vector<DecompositionRow> rows(d);
    for (int k = 0; k < d; ++k) {
        const double subsets = binomial(d - 1, k);
        rows[k] = DecompositionRow{k, static_cast<std::uint64_t>(subsets),
                                   classes[k].value() / (static_cast<double>(d) * subsets), 0.0};
    }
    return finish_table(cache, std::move(rows));
}

}  // namespace reference

}  // namespace bayescv
