#pragma once

// Subset-enumeration kernels shared by the expansion and null-space checks.
//
// The top-level functions split the search over the first (smallest) element
// of the subset and run the branches with OpenMP; results are reduced in a
// fixed order so they never depend on the schedule. The `serial` namespace
// holds plain brute-force versions of the same queries. They exist as test
// oracles and as the benchmark baseline.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <limits>
#include <optional>
#include <vector>

#include "minexp/graph.hpp"
#include "minexp/linalg.hpp"

namespace minexp::kernels {

/// Upper bound on search-tree nodes visited below any single first element.
/// Exceeding it raises TooLarge.
struct SearchLimits {
  double max_nodes = 1e8;
};

/// First subset S in lexicographic depth-first order with 1 <= |S| <= max_size
/// and |Gamma(S)| < ratio * |S|. Branches are cut once |Gamma| >= ratio *
/// max_size, since no superset can violate after that.
std::optional<IndexSet> find_expansion_violation(const BipartiteGraph& g, int max_size, double ratio,
                                                 const SearchLimits& limits = {});

struct Deficiency {
  int value = std::numeric_limits<int>::max();
  IndexSet witness;
};

/// min over 1 <= |S| <= max_size of |Gamma(S)| - |S|, with the first minimiser
/// in depth-first order. Empty graph or max_size < 1 gives value INT_MAX.
Deficiency min_deficiency(const BipartiteGraph& g, int max_size, const SearchLimits& limits = {});

/// Smallest linearly dependent column subset of size <= max_size, the
/// lexicographically first among those of that size. Independence is tested
/// by incremental Gram-Schmidt: a column is dependent when its residual
/// against the current span is <= tol times its norm. Zero columns count as
/// dependent singletons.
std::optional<IndexSet> smallest_dependent_set(const linalg::Matrix& a, int max_size, double tol,
                                               const SearchLimits& limits = {});

/// Smallest i in [0, count) with pred(i) == false, or count if there is none.
/// An exception thrown by pred at the smallest failing index is rethrown.
template <class Pred>
std::int64_t first_failure(std::int64_t count, Pred&& pred) {
  std::atomic<std::int64_t> first{count};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)));
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    if (i > first.load(std::memory_order_relaxed)) continue;
    bool ok = true;
    try {
      ok = pred(i);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
      ok = false;
    }
    if (!ok) {
      std::int64_t cur = first.load();
      while (i < cur && !first.compare_exchange_weak(cur, i)) {
      }
    }
  }
  const std::int64_t hit = first.load();
  if (hit < count && errors[static_cast<std::size_t>(hit)]) std::rethrow_exception(errors[static_cast<std::size_t>(hit)]);
  return hit;
}

/// C(n, k) as a double (saturates to +inf).
double binomial(int n, int k);

/// The rank-th k-subset of {0..n-1} in lexicographic order.
IndexSet unrank_combination(int n, int k, std::uint64_t rank);

/// Advance c to the next k-subset of {0..n-1} in lexicographic order; false
/// after the last one.
bool next_combination(IndexSet& c, int n);

namespace serial {

/// First violating subset in (size, lexicographic) order.
std::optional<IndexSet> find_expansion_violation(const BipartiteGraph& g, int max_size, double ratio);

/// Minimum deficiency; witness is first in (size, lexicographic) order.
Deficiency min_deficiency(const BipartiteGraph& g, int max_size);

/// Uses linalg::column_rank on every subset.
std::optional<IndexSet> smallest_dependent_set(const linalg::Matrix& a, int max_size, double tol);

}  // namespace serial

}  // namespace minexp::kernels
