#pragma once

#include <cstdint>

#include "minexp/graph.hpp"
#include "minexp/kernels.hpp"

namespace minexp {

enum class CheckMode { Exhaustive, Sampled };

struct ExpansionOptions {
  CheckMode mode = CheckMode::Exhaustive;
  int samples = 10000;  // sampled mode only
  std::uint64_t seed = 0;
  kernels::SearchLimits limits;
};

struct ExpansionResult {
  bool holds = true;
  IndexSet witness;  // a violating S when !holds
};

/// (k, eps) expansion: every S with 1 <= |S| <= k has |Gamma(S)| >= (1-eps) d |S|.
/// Exhaustive mode is exact; sampled mode can only refute. Throws
/// InvalidArgument for k > n or eps outside [0, 1), TooLarge when the
/// exhaustive search exceeds its node budget.
ExpansionResult is_expander(const BipartiteGraph& g, int k, double eps, const ExpansionOptions& options = {});

/// min over nonempty S, |S| <= t of |Gamma(S)| - |S|. Non-negative exactly
/// when every such S is matchable into its neighbourhood (Hall).
kernels::Deficiency min_expansion_deficiency(const BipartiteGraph& g, int t, const kernels::SearchLimits& limits = {});

/// Largest r0 <= cap such that every S with |S| <= r0 has |Gamma(S)| >= |S|,
/// i.e. the graph is an (r0, 1 - 1/d) expander.
int minimal_expansion_size(const BipartiteGraph& g, int cap, const kernels::SearchLimits& limits = {});

/// Smallest eps for which g is a (k, eps) expander:
/// 1 - min_{1<=|S|<=k} |Gamma(S)| / (d |S|). Exhaustive; TooLarge past 1e8 subsets.
double expansion_epsilon(const BipartiteGraph& g, int k);

}  // namespace minexp
