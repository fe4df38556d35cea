#pragma once

// Subset-decomposition engine: caches log-marginals over the full 2^d subset
// lattice, computes leave-one-out / leave-m-out cross-validation log-scores,
// and verifies the exact identity between the log-likelihood and the sum of
// per-cardinality averaged log-scores.

#include <cstdint>
#include <span>
#include <vector>

#include "bayescv/core.hpp"
#include "bayescv/models.hpp"

namespace bayescv {

/// All 2^d subset log-marginals of one (hypothesis, dataset) pair.
/// table[0] == 0; entries are a pure function of the mask, so builds are
/// bit-identical for any thread count.
struct MarginalCache {
    int d = 0;
    std::vector<double> table;
    std::uint64_t eval_count = 0;  // closed-form evaluations performed

    double full_set() const { return table[full_mask(d)]; }
};

/// Builds the cache with one sufficient-statistic update plus one closed-form
/// evaluation per subset (2^d - 1 evaluations total). threads == 0 picks the
/// OpenMP default.
MarginalCache build_cache(const Hypothesis& hypothesis, const Dataset& data, int threads = 0);

enum class CvScheme {
    LeaveMOutExhaustive,
    KFoldPartition,
};

struct CvScore {
    int m = 1;             // leave-out size (largest fold for partition scheme)
    double value = 0.0;    // per-datum average log-score
    CvScheme scheme = CvScheme::LeaveMOutExhaustive;
};

/// Leave-one-out CV log-score: (1/d) * sum_i [log m(full) - log m(full - i)].
/// Requires d >= 2; throws DataModelError if a conditioning marginal is -inf.
CvScore loo_score(const MarginalCache& cache);

/// Average over all C(d,m) held-out subsets T of
/// [log m(full) - log m(full - T)] / m. m == 1 reproduces loo_score exactly.
CvScore leave_m_out_score(const MarginalCache& cache, int m);

/// Disjoint-fold CV score with user-supplied fold assignments (one fold id in
/// 0..F-1 per datum): (1/d) * sum_F [log m(full) - log m(full - F)].
/// A scoring convenience only; no decomposition identity holds for it.
CvScore kfold_partition_score(const MarginalCache& cache, std::span<const int> fold_of_datum);

struct DecompositionRow {
    int k = 0;                  // cardinality this row averages over
    std::uint64_t count = 0;    // number of subsets in the class
    double score = 0.0;         // averaged log-score S_k
    double cumulative = 0.0;    // compensated running sum of scores
};

/// Per-cardinality averaged log-scores plus the reconstructed log-likelihood.
/// `reconstructed` is exactly the final cumulative entry.
struct DecompositionTable {
    std::vector<DecompositionRow> rows;
    double reconstructed = 0.0;
    double direct = 0.0;        // log m(full set)
    double residual = 0.0;      // reconstructed - direct
};

/// Rows k = 1..d: S_k = C(d,k)^-1 * sum_{|A|=k} (1/k) * sum_{i in A}
/// [log m(A) - log m(A - i)]. Throws DataModelError if any marginal is -inf.
DecompositionTable per_cardinality_scores(const MarginalCache& cache, int threads = 0);

/// Per-datum form: rows keyed by conditioning cardinality k = 0..d-1,
/// row_k = (1/d) * sum_j C(d-1,k)^-1 * sum_{S not containing j, |S|=k}
/// [log m(S + j) - log m(S)]. Same reconstruction target as the
/// per-cardinality table.
DecompositionTable per_datum_decomposition(const MarginalCache& cache, int threads = 0);

struct VerifyResult {
    DecompositionTable per_cardinality;
    DecompositionTable per_datum;
    double tolerance = 0.0;           // requested tolerance
    double effective_tolerance = 0.0; // tolerance * max(1, |direct|)
    bool pass = false;
};

/// Builds the cache, runs both decompositions and checks both residuals.
VerifyResult verify_identity(const Hypothesis& hypothesis, const Dataset& data,
                             double tolerance, int threads = 0);

/// Serial implementations kept as the reference for tests and benchmarks.
/// build_cache_serial matches the parallel build bit-for-bit; the
/// decompositions match within accumulation tolerance.
namespace reference {

MarginalCache build_cache_serial(const Hypothesis& hypothesis, const Dataset& data);
DecompositionTable per_cardinality_serial(const MarginalCache& cache);
DecompositionTable per_datum_serial(const MarginalCache& cache);

}  // namespace reference

}  // namespace bayescv
