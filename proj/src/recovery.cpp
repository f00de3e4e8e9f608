#include "minexp/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "minexp/error.hpp"
#include "minexp/random.hpp"
#include "minexp/simplex.hpp"

namespace minexp {

using linalg::Matrix;
using linalg::Vector;

namespace {

void check_measurements(const MeasurementMatrix& a, const Vector& y) {
  if (y.size() != a.m()) {
    throw Error(ErrorCode::InvalidArgument,
                "measurement vector has length " + std::to_string(y.size()) + ", expected " + std::to_string(a.m()));
  }
  linalg::require_finite(y, "measurement vector");
}

void check_k(const MeasurementMatrix& a, int k) {
  if (k < 0 || k > a.n()) throw Error(ErrorCode::InvalidArgument, "k must lie in [0, n]");
}

IndexSet complement(const IndexSet& s, int size) {
  IndexSet out;
  out.reserve(static_cast<std::size_t>(size) - s.size());
  auto it = s.begin();
  for (Index i = 0; i < size; ++i) {
    if (it != s.end() && *it == i) {
      ++it;
    } else {
      out.push_back(i);
    }
  }
  return out;
}

Matrix submatrix(const Matrix& a, const IndexSet& rows, const IndexSet& cols) {
  Matrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = a(rows[r], cols[c]);
    }
  }
  return out;
}

Vector gather(const Vector& v, const IndexSet& idx) {
  Vector out(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) out(static_cast<Eigen::Index>(i)) = v(idx[i]);
  return out;
}

// Scatters z onto cols, clamps negatives and fills in the residual.
void finish(RecoveryReport& rep, const MeasurementMatrix& a, const Vector& y, const IndexSet& cols, const Vector& z) {
  rep.estimate = Vector::Zero(a.n());
  for (std::size_t i = 0; i < cols.size(); ++i) {
    double v = z(static_cast<Eigen::Index>(i));
    if (v < 0.0) {
      rep.clamp_magnitude = std::max(rep.clamp_magnitude, -v);
      v = 0.0;
    }
    rep.estimate(cols[i]) = v;
  }
  rep.residual_l1 = (a.dense() * rep.estimate - y).lpNorm<1>();
}

Vector l1_regression(const Matrix& a, const Vector& y, std::string& status) {
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  lp::LinearProgram prog;
  prog.objective = Vector::Zero(cols + 2 * rows);
  prog.objective.tail(2 * rows).setOnes();
  prog.eq_matrix = Matrix::Zero(rows, cols + 2 * rows);
  prog.eq_matrix.leftCols(cols) = a;
  prog.eq_matrix.middleCols(cols, rows) = -Matrix::Identity(rows, rows);
  prog.eq_matrix.rightCols(rows) = Matrix::Identity(rows, rows);
  prog.eq_rhs = y;
  prog.lower_bounds = Vector::Zero(cols + 2 * rows);
  prog.lower_bounds.head(cols).setConstant(-lp::kInf);
  prog.upper_bounds = Vector::Constant(cols + 2 * rows, lp::kInf);
  const lp::LpSolution sol = lp::solve_lp(prog);
  status = lp::to_string(sol.status);
  if (sol.status != lp::LpStatus::Optimal) {
    throw Error(ErrorCode::NumericalFailure, "l1 regression returned " + status);
  }
  return sol.point.head(cols);
}

}  // namespace

SparseSignal random_sparse_signal(int n, int k, std::uint64_t seed, double lo, double hi) {
  if (n < 0 || k < 0 || k > n) throw Error(ErrorCode::InvalidArgument, "need 0 <= k <= n");
  if (!(lo > 0.0 && hi >= lo)) throw Error(ErrorCode::InvalidArgument, "signal range must satisfy 0 < lo <= hi");
  Rng rng(seed);
  std::vector<Index> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (int e = 0; e < k; ++e) {
    std::uniform_int_distribution<int> pick(e, n - 1);
    std::swap(pool[e], pool[pick(rng)]);
  }
  SparseSignal s;
  s.support.assign(pool.begin(), pool.begin() + k);
  std::sort(s.support.begin(), s.support.end());
  s.values = Vector::Zero(n);
  std::uniform_real_distribution<double> value(lo, hi);
  for (Index i : s.support) s.values(i) = value(rng);
  return s;
}

bool score(RecoveryReport& report, const Vector& truth, double tol) {
  report.success = report.estimate.size() == truth.size() &&
                   (truth.size() == 0 || (report.estimate - truth).lpNorm<Eigen::Infinity>() <= tol);
  return report.success;
}

NoiseModel noise_at_snr(const Vector& clean, double snr_db, std::uint64_t seed) {
  NoiseModel noise;
  noise.vector = Vector::Zero(clean.size());
  if (std::isinf(snr_db) && snr_db > 0) return noise;
  if (std::isnan(snr_db) || std::isinf(snr_db)) throw Error(ErrorCode::InvalidArgument, "SNR must be finite or +inf");
  Rng rng(seed);
  std::normal_distribution<double> normal;
  for (Eigen::Index i = 0; i < clean.size(); ++i) noise.vector(i) = normal(rng);
  const double vn = noise.vector.norm();
  const double cn = clean.norm();
  if (vn == 0.0 || cn == 0.0) return noise;
  noise.vector *= cn / vn * std::pow(10.0, -snr_db / 20.0);
  noise.kind = NoiseModel::Kind::Additive;
  return noise;
}

RecoveryReport l1_min_nonneg(const MeasurementMatrix& a, const Vector& y) {
  check_measurements(a, y);
  RecoveryReport rep;
  const lp::LpSolution sol = lp::solve_lp(lp::LinearProgram::nonnegative(Vector::Ones(a.n()), a.dense(), y));
  rep.solver_status = lp::to_string(sol.status);
  IndexSet all(static_cast<std::size_t>(a.n()));
  std::iota(all.begin(), all.end(), 0);
  finish(rep, a, y, all, sol.status == lp::LpStatus::Optimal ? sol.point : Vector::Zero(a.n()));
  return rep;
}

RecoveryReport reverse_expansion_recovery(const MeasurementMatrix& a, const Vector& y, int k, double zero_tol) {
  check_measurements(a, y);
  check_k(a, k);
  if (!(zero_tol >= 0.0)) throw Error(ErrorCode::InvalidArgument, "zero_tol must be non-negative");
  RecoveryReport rep;
  rep.k_used = k;
  const double cut = zero_tol * y.lpNorm<Eigen::Infinity>();
  IndexSet t1;
  for (Index i = 0; i < a.m(); ++i) {
    if (std::abs(y(i)) <= cut) t1.push_back(i);
  }
  rep.zero_set_size = static_cast<int>(t1.size());
  const long need = static_cast<long>(a.m()) - static_cast<long>(k) * a.d();
  if (static_cast<long>(t1.size()) < need) {
    throw Error(ErrorCode::InsufficientZeros, std::to_string(t1.size()) + " zero measurements, need " +
                                                  std::to_string(need));
  }
  const IndexSet s2 = complement(left_neighbors(a.graph(), t1), a.n());
  const IndexSet t2 = complement(t1, a.m());
  if (s2.size() > t2.size()) {
    throw Error(ErrorCode::RankDeficient,
                std::to_string(s2.size()) + " unknowns left for " + std::to_string(t2.size()) + " measurements");
  }
  const Vector z = linalg::least_squares(submatrix(a.dense(), t2, s2), gather(y, t2));
  rep.solver_status = "LeastSquares";
  finish(rep, a, y, s2, z);
  return rep;
}

const char* to_string(NormChoice norm) { return norm == NormChoice::L1 ? "l1" : "l2"; }

RecoveryReport noisy_recovery(const MeasurementMatrix& a, const Vector& y, int k, NormChoice norm) {
  check_measurements(a, y);
  check_k(a, k);
  RecoveryReport rep;
  rep.k_used = k;
  const long zeros = std::max(0L, static_cast<long>(a.m()) - static_cast<long>(k) * a.d());
  std::vector<Index> order(static_cast<std::size_t>(a.m()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Index p, Index q) { return std::abs(y(p)) < std::abs(y(q)); });
  IndexSet t1(order.begin(), order.begin() + zeros);
  std::sort(t1.begin(), t1.end());
  rep.zero_set_size = static_cast<int>(t1.size());

  const IndexSet s2 = complement(left_neighbors(a.graph(), t1), a.n());
  const IndexSet t2 = complement(t1, a.m());
  const Vector y2 = gather(y, t2);
  if (s2.empty()) {
    if (y2.size() > 0 && y2.lpNorm<Eigen::Infinity>() > 0.0) {
      throw Error(ErrorCode::DegenerateSplit, "all columns eliminated but the kept measurements are nonzero");
    }
    rep.solver_status = "Empty";
    finish(rep, a, y, s2, Vector());
    return rep;
  }
  const Matrix a2 = submatrix(a.dense(), t2, s2);
  Vector z;
  if (norm == NormChoice::L1) {
    z = l1_regression(a2, y2, rep.solver_status);
  } else {
    z = linalg::least_squares(a2, y2);
    rep.solver_status = "LeastSquares";
  }
  finish(rep, a, y, s2, z);
  return rep;
}

RecoveryReport noisy_recovery_auto(const MeasurementMatrix& a, const Vector& y, int k_max, NormChoice norm,
                                   double tie_tol) {
  check_measurements(a, y);
  check_k(a, k_max);
  const double slack = tie_tol * y.lpNorm<1>();
  RecoveryReport best;
  bool have = false;
  for (int k = 0; k <= k_max; ++k) {
    RecoveryReport rep;
    try {
      rep = noisy_recovery(a, y, k, norm);
    } catch (const Error&) {
      continue;
    }
    if (!have || rep.residual_l1 < best.residual_l1 - slack) {
      best = std::move(rep);
      have = true;
    }
  }
  if (!have) throw Error(ErrorCode::NumericalFailure, "no split in k = 0.." + std::to_string(k_max) + " succeeded");
  return best;
}

}  // namespace minexp
