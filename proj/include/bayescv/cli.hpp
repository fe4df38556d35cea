#pragma once

// Command entry points. Each returns the process exit code:
//   0 success, 1 identity-verification failure, 2 usage/config error,
//   3 data/model incompatibility.

#include <ostream>

#include "bayescv/config.hpp"

namespace bayescv {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIdentityFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitDataModel = 3;

/// Per hypothesis: log-likelihood, LOO score and any requested leave-m-out scores.
int cmd_score(const RunConfig& run, std::ostream& out, std::ostream& err);

/// Per hypothesis: both decomposition tables and residuals; exit 1 if any
/// residual exceeds the tolerance (an implementation bug, not a data property).
int cmd_verify(const RunConfig& run, std::ostream& out, std::ostream& err);

/// Evidence report over the configured hypothesis set (requires priors).
int cmd_compare(const RunConfig& run, std::ostream& out, std::ostream& err);

/// Per-cardinality score rows as a CSV stream (default format for this command).
int cmd_subsets(const RunConfig& run, std::ostream& out, std::ostream& err);

}  // namespace bayescv
