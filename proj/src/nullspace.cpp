#include "minexp/nullspace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "minexp/error.hpp"
#include "minexp/random.hpp"
#include "minexp/simplex.hpp"

namespace minexp {

using linalg::Matrix;
using linalg::Vector;

namespace {

void require_constant_column_sums(const Matrix& a) {
  if (a.cols() == 0) return;
  if ((a.array() < 0.0).any()) {
    throw Error(ErrorCode::InvalidArgument, "matrix has negative entries");
  }
  const Vector sums = a.colwise().sum().transpose();
  const double ref = sums(0);
  for (Eigen::Index j = 0; j < sums.size(); ++j) {
    if (std::abs(sums(j) - ref) > 1e-9 * std::max(std::abs(ref), 1.0)) {
      throw Error(ErrorCode::NotConstantColumnSum,
                  "column " + std::to_string(j) + " sums to " + std::to_string(sums(j)) + ", column 0 to " +
                      std::to_string(ref));
    }
  }
}

void require_support(const Matrix& a, const IndexSet& s) {
  if (static_cast<Eigen::Index>(s.size()) >= a.cols()) {
    throw Error(ErrorCode::InvalidArgument, "support must be smaller than the number of columns");
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0 || s[i] >= a.cols() || (i > 0 && s[i] <= s[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "support must be sorted, distinct and in range");
    }
  }
}

SupportCertificate certify_support(const Matrix& a, const IndexSet& s) {
  SupportCertificate cert;
  cert.support = s;
  const Eigen::Index n = a.cols();

  Matrix sub(a.rows(), static_cast<Eigen::Index>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) sub.col(static_cast<Eigen::Index>(i)) = a.col(s[i]);
  if (linalg::column_rank(sub) < sub.cols()) {
    const Matrix basis = linalg::nullspace_basis(sub);
    Vector w = Vector::Zero(n);
    for (std::size_t i = 0; i < s.size(); ++i) w(s[i]) = basis(static_cast<Eigen::Index>(i), 0);
    cert.recoverable = false;
    cert.failing_witness = std::move(w);
    return cert;
  }
  if (s.empty()) return cert;

  lp::LinearProgram prog;
  prog.objective = Vector::Zero(n);
  prog.eq_matrix = Matrix::Zero(a.rows() + 1, n);
  prog.eq_matrix.topRows(a.rows()) = a;
  prog.eq_rhs = Vector::Zero(a.rows() + 1);
  prog.eq_rhs(a.rows()) = -1.0;
  prog.lower_bounds = Vector::Zero(n);
  prog.upper_bounds = Vector::Constant(n, lp::kInf);
  for (Index i : s) {
    prog.eq_matrix(a.rows(), i) = 1.0;
    prog.lower_bounds(i) = -lp::kInf;
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (!std::binary_search(s.begin(), s.end(), static_cast<Index>(j))) prog.objective(j) = 1.0;
  }
  const lp::LpSolution sol = lp::solve_lp(prog);
  if (sol.status == lp::LpStatus::Optimal) {
    cert.recoverable = false;
    cert.failing_witness = sol.point;
  }
  return cert;
}

}  // namespace

CompleteRankResult complete_rank(const Matrix& a, int max_r, double tol, const kernels::SearchLimits& limits) {
  const int n = static_cast<int>(a.cols());
  if (max_r < 0 || max_r > n) {
    throw Error(ErrorCode::InvalidArgument, "max_r must lie in [0, cols]");
  }
  linalg::require_finite(a, "complete_rank");
  CompleteRankResult res;
  const int search = std::min(n, max_r + 1);
  auto dep = kernels::smallest_dependent_set(a, search, tol, limits);
  if (dep) {
    res.value = static_cast<int>(dep->size()) - 1;
    res.witness = std::move(*dep);
  } else {
    res.value = max_r;
    res.capped = max_r < n;
  }
  return res;
}

CompleteRankResult complete_rank(const MeasurementMatrix& a, int max_r, double tol,
                                 const kernels::SearchLimits& limits) {
  return complete_rank(a.dense(), max_r, tol, limits);
}

std::vector<Vector> sample_null_vectors(const Matrix& a, int count, std::uint64_t seed) {
  const Matrix basis = linalg::nullspace_basis(a);
  std::vector<Vector> out;
  if (basis.cols() == 0) return out;
  Rng rng(seed);
  std::normal_distribution<double> normal;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int t = 0; t < count; ++t) {
    Vector coef(basis.cols());
    for (Eigen::Index i = 0; i < coef.size(); ++i) coef(i) = normal(rng);
    out.push_back(basis * coef);
  }
  return out;
}

bool zero_sum_holds(const Matrix& a, int trials, std::uint64_t seed) {
  for (const Vector& w : sample_null_vectors(a, trials, seed)) {
    if (std::abs(w.sum()) > 1e-9 * w.lpNorm<1>()) return false;
  }
  return true;
}

bool zero_sum_holds(const MeasurementMatrix& a, int trials, std::uint64_t seed) {
  return zero_sum_holds(a.dense(), trials, seed);
}

int count_negative(const Vector& w, double tol) {
  if (w.size() == 0) return 0;
  const double cut = -tol * w.lpNorm<Eigen::Infinity>();
  return static_cast<int>((w.array() < cut).count());
}

SupportCertificate support_recoverable(const Matrix& a, const IndexSet& s) {
  linalg::require_finite(a, "support_recoverable");
  require_constant_column_sums(a);
  require_support(a, s);
  return certify_support(a, s);
}

SupportCertificate support_recoverable(const MeasurementMatrix& a, const IndexSet& s) {
  return support_recoverable(a.dense(), s);
}

StrongCertificate strong_recoverable_k(const Matrix& a, int k, const StrongOptions& options) {
  const int n = static_cast<int>(a.cols());
  if (k < 0 || k >= n) {
    throw Error(ErrorCode::InvalidArgument, "k must lie in [0, n)");
  }
  linalg::require_finite(a, "strong_recoverable_k");
  require_constant_column_sums(a);
  const double total = kernels::binomial(n, k);
  if (total > options.max_supports) {
    throw Error(ErrorCode::TooLarge, std::to_string(total) + " supports of size " + std::to_string(k));
  }
  StrongCertificate out;
  out.k = k;
  const auto count = static_cast<std::int64_t>(total);
  const std::int64_t bad = kernels::first_failure(count, [&](std::int64_t r) {
    return certify_support(a, kernels::unrank_combination(n, k, static_cast<std::uint64_t>(r))).recoverable;
  });
  if (bad < count) {
    SupportCertificate cert = certify_support(a, kernels::unrank_combination(n, k, static_cast<std::uint64_t>(bad)));
    out.holds = false;
    out.failing_support = std::move(cert.support);
    out.witness = std::move(cert.failing_witness);
  }
  return out;
}

StrongCertificate strong_recoverable_k(const MeasurementMatrix& a, int k, const StrongOptions& options) {
  return strong_recoverable_k(a.dense(), k, options);
}

bool two_hop_condition(const MeasurementMatrix& a, const IndexSet& s, const kernels::SearchLimits& limits) {
  const BipartiteGraph& g = a.graph();
  for (Index j : s) {
    if (j < 0 || j >= g.n()) throw Error(ErrorCode::InvalidArgument, "support index out of range");
  }
  const IndexSet gamma = neighbors(g, s);
  const IndexSet reach = left_neighbors(g, gamma);  // contains s
  const BipartiteGraph sub = g.induced(reach);
  const int bound = std::min(static_cast<int>(reach.size()), static_cast<int>(gamma.size()) + 1);
  if (bound < 1) return true;
  return kernels::min_deficiency(sub, bound, limits).value >= 0;
}

RipRatios rip1_check(const MeasurementMatrix& a, int k, double eps, int trials, std::uint64_t seed) {
  if (!(eps >= 0.0 && eps < 0.5)) {
    throw Error(ErrorCode::InvalidEpsilon, "rip1_check needs 0 <= eps < 0.5");
  }
  const int n = a.n();
  if (k < 1 || k > n) throw Error(ErrorCode::InvalidArgument, "k must lie in [1, n]");
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be positive");

  RipRatios out;
  const double d = a.d();
  const double e1 = a.epsilon1();
  out.lower_bound = d * (1.0 - 2.0 * eps) * (1.0 - e1) / (1.0 + e1);
  out.upper_bound = d;
  out.min_ratio = std::numeric_limits<double>::infinity();
  out.max_ratio = 0.0;

  Rng rng(seed);
  std::uniform_real_distribution<double> mag(1e-3, 1.0);
  std::bernoulli_distribution sign(0.5);
  std::vector<Index> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  const Matrix& dense = a.dense();
  for (int t = 0; t < trials; ++t) {
    for (int e = 0; e < k; ++e) {
      std::uniform_int_distribution<int> pick(e, n - 1);
      std::swap(pool[e], pool[pick(rng)]);
    }
    Vector u = Vector::Zero(n);
    for (int e = 0; e < k; ++e) u(pool[e]) = sign(rng) ? mag(rng) : -mag(rng);
    const double ratio = (dense * u).lpNorm<1>() / u.lpNorm<1>();
    out.min_ratio = std::min(out.min_ratio, ratio);
    out.max_ratio = std::max(out.max_ratio, ratio);
  }
  return out;
}

}  // namespace minexp
