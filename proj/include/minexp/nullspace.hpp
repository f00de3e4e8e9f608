#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "minexp/graph.hpp"
#include "minexp/kernels.hpp"
#include "minexp/linalg.hpp"

namespace minexp {

/// Kruskal rank: the largest r such that every r columns are independent.
struct CompleteRankResult {
  int value = 0;
  /// Smallest dependent column subset (size value + 1), lexicographically
  /// first of that size. Empty when no dependent subset was found within the
  /// searched sizes.
  IndexSet witness;
  /// True when value was capped at max_r, meaning "at least max_r".
  bool capped = false;
};

/// Exact Kruskal rank, capped at max_r (0 <= max_r <= cols). Subsets up to
/// size max_r + 1 are searched so a witness is reported whenever the true
/// value is <= max_r.
CompleteRankResult complete_rank(const linalg::Matrix& a, int max_r, double tol = linalg::kRankTol,
                                 const kernels::SearchLimits& limits = {});
CompleteRankResult complete_rank(const MeasurementMatrix& a, int max_r, double tol = linalg::kRankTol,
                                 const kernels::SearchLimits& limits = {});

/// Random combinations of an orthonormal null-space basis (Gaussian
/// coefficients). Empty when the null space is trivial.
std::vector<linalg::Vector> sample_null_vectors(const linalg::Matrix& a, int count, std::uint64_t seed);

/// Samples `trials` null vectors; true iff each has |sum w| <= 1e-9 ||w||_1.
bool zero_sum_holds(const linalg::Matrix& a, int trials, std::uint64_t seed);
bool zero_sum_holds(const MeasurementMatrix& a, int trials, std::uint64_t seed);

/// Entries below -tol * ||w||_inf.
int count_negative(const linalg::Vector& w, double tol = 1e-9);

struct SupportCertificate {
  IndexSet support;
  bool recoverable = true;
  /// Nonzero null vector with w >= 0 off the support, when not recoverable.
  std::optional<linalg::Vector> failing_witness;
};

/// Decides whether every non-negative signal supported on s is the unique
/// non-negative solution of A x = A x0. Stage one: the columns of s must be
/// independent. Stage two: the LP {A w = 0, w >= 0 off s, sum_{i in s} w_i = -1}
/// must be infeasible. Requires non-negative entries with constant column sums
/// (NotConstantColumnSum otherwise) and |s| < n.
SupportCertificate support_recoverable(const linalg::Matrix& a, const IndexSet& s);
SupportCertificate support_recoverable(const MeasurementMatrix& a, const IndexSet& s);

struct StrongCertificate {
  int k = 0;
  bool holds = true;
  IndexSet failing_support;
  std::optional<linalg::Vector> witness;
};

struct StrongOptions {
  double max_supports = 1e6;  // TooLarge beyond this many size-k supports
};

/// True iff every size-k support passes support_recoverable. Stops at the
/// first failing support (lexicographic order) and returns its witness.
StrongCertificate strong_recoverable_k(const linalg::Matrix& a, int k, const StrongOptions& options = {});
StrongCertificate strong_recoverable_k(const MeasurementMatrix& a, int k, const StrongOptions& options = {});

/// Sufficient matching condition for recovering supports on s: with
/// S2 = Gamma(Gamma(s)) \ s, every S' in s + S2 of size <= |Gamma(s)| + 1
/// has |Gamma(S')| >= |S'|.
bool two_hop_condition(const MeasurementMatrix& a, const IndexSet& s, const kernels::SearchLimits& limits = {});

struct RipRatios {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double lower_bound = 0.0;  // d (1 - 2 eps) (1 - eps1) / (1 + eps1)
  double upper_bound = 0.0;  // d
};

/// Monte-Carlo l1 distortion ||A u||_1 / ||u||_1 over random k-sparse signed u
/// whose nonzeros are uniform in [-1, 1] minus [-1e-3, 1e-3]. Throws
/// InvalidEpsilon for eps >= 0.5.
RipRatios rip1_check(const MeasurementMatrix& a, int k, double eps, int trials, std::uint64_t seed);

}  // namespace minexp
