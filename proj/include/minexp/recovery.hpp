#pragma once

#include <cstdint>
#include <string>

#include "minexp/graph.hpp"
#include "minexp/linalg.hpp"

namespace minexp {

/// Non-negative k-sparse signal: strictly positive on `support`, zero elsewhere.
struct SparseSignal {
  linalg::Vector values;
  IndexSet support;

  int length() const { return static_cast<int>(values.size()); }
  int sparsity() const { return static_cast<int>(support.size()); }
};

/// Uniform random support of size k; values uniform in [lo, hi] with lo > 0.
SparseSignal random_sparse_signal(int n, int k, std::uint64_t seed, double lo = 0.1, double hi = 1.1);

struct RecoveryReport {
  linalg::Vector estimate;
  bool success = false;  // filled in by score()
  double residual_l1 = 0.0;
  int zero_set_size = -1;  // |T1|; -1 for plain l1 minimization
  std::string solver_status;
  double clamp_magnitude = 0.0;  // largest negative entry zeroed in the estimate
  int k_used = -1;
};

/// Sets report.success = ||estimate - truth||_inf <= tol and returns it.
bool score(RecoveryReport& report, const linalg::Vector& truth, double tol = 1e-6);

struct NoiseModel {
  enum class Kind { None, Additive };
  Kind kind = Kind::None;
  linalg::Vector vector;

  double l1_budget() const { return kind == Kind::None ? 0.0 : vector.lpNorm<1>(); }
};

/// Gaussian noise scaled so that 10 log10(||clean||^2 / ||v||^2) = snr_db.
/// An infinite snr_db gives Kind::None with a zero vector.
NoiseModel noise_at_snr(const linalg::Vector& clean, double snr_db, std::uint64_t seed);

/// min sum(x) s.t. A x = y, x >= 0. An infeasible y is reported through
/// solver_status with a zero estimate.
RecoveryReport l1_min_nonneg(const MeasurementMatrix& a, const linalg::Vector& y);

/// Reverse expansion recovery for exactly measured k-sparse signals. Rows with
/// |y_i| <= zero_tol * ||y||_inf are zero measurements T1; every column
/// touching them is set to zero, and the rest is solved by least squares on
/// the remaining rows. Throws InsufficientZeros if |T1| < m - kd and
/// RankDeficient if the reduced system has dependent columns.
RecoveryReport reverse_expansion_recovery(const MeasurementMatrix& a, const linalg::Vector& y, int k,
                                          double zero_tol = 1e-9);

enum class NormChoice { L1, L2 };

const char* to_string(NormChoice norm);

/// Noisy variant: T1 is the m - kd entries of smallest |y_i| (ties to the
/// lower index), columns touching T1 are zeroed, and the rest is fitted by l1
/// regression or least squares. Negative entries of the fit are clamped to
/// zero. Throws DegenerateSplit when every column is eliminated but the
/// remaining measurements are nonzero.
RecoveryReport noisy_recovery(const MeasurementMatrix& a, const linalg::Vector& y, int k, NormChoice norm);

/// Runs noisy_recovery for k = 0..k_max and keeps the split with the smallest
/// l1 residual; residuals within tie_tol * ||y||_1 go to the smaller k. Splits
/// that fail with an Error are skipped.
RecoveryReport noisy_recovery_auto(const MeasurementMatrix& a, const linalg::Vector& y, int k_max, NormChoice norm,
                                   double tie_tol = 1e-9);

}  // namespace minexp
