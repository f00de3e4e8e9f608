#include "minexp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "minexp/error.hpp"

namespace minexp::lp {

LinearProgram LinearProgram::nonnegative(Vector c, Matrix a, Vector b) {
  const Eigen::Index n = c.size();
  return LinearProgram{std::move(c), std::move(a), std::move(b), Vector::Zero(n), Vector::Constant(n, kInf)};
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// x_j = offset + sign * xs[pos] - (neg >= 0 ? xs[neg] : 0)
struct VarMap {
  double offset = 0.0;
  double sign = 1.0;
  int pos = -1;
  int neg = -1;
};

struct StandardForm {
  Matrix a;  // rows x cols, x >= 0
  Vector b;
  Vector c;
  double cost_offset = 0.0;
  std::vector<VarMap> vars;
};

void validate(const LinearProgram& lp) {
  const Eigen::Index n = lp.objective.size();
  if (lp.eq_matrix.cols() != n || lp.lower_bounds.size() != n || lp.upper_bounds.size() != n ||
      lp.eq_matrix.rows() != lp.eq_rhs.size()) {
    throw Error(ErrorCode::InvalidArgument, "linear program dimensions disagree");
  }
  linalg::require_finite(lp.eq_matrix, "eq_matrix");
  if (!lp.eq_rhs.allFinite() || !lp.objective.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "objective / rhs must be finite");
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    const double lo = lp.lower_bounds[j], hi = lp.upper_bounds[j];
    if (std::isnan(lo) || std::isnan(hi) || lo > hi || lo == kInf || hi == -kInf) {
      throw Error(ErrorCode::InvalidArgument, "bad bounds on variable " + std::to_string(j));
    }
  }
}

StandardForm to_standard(const LinearProgram& lp) {
  const Eigen::Index n = lp.objective.size();
  const Eigen::Index m = lp.eq_matrix.rows();
  StandardForm sf;
  sf.vars.resize(n);

  int cols = 0;
  int upper_rows = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double lo = lp.lower_bounds[j], hi = lp.upper_bounds[j];
    VarMap& v = sf.vars[j];
    if (std::isfinite(lo)) {
      v.offset = lo;
      v.pos = cols++;
      if (std::isfinite(hi)) ++upper_rows;
    } else if (std::isfinite(hi)) {
      v.offset = hi;
      v.sign = -1.0;
      v.pos = cols++;
    } else {
      v.pos = cols++;
      v.neg = cols++;
    }
  }
  const int slack_begin = cols;
  cols += upper_rows;

  sf.a = Matrix::Zero(m + upper_rows, cols);
  sf.b = Vector::Zero(m + upper_rows);
  sf.c = Vector::Zero(cols);

  for (Eigen::Index j = 0; j < n; ++j) {
    const VarMap& v = sf.vars[j];
    sf.a.col(v.pos).head(m) = v.sign * lp.eq_matrix.col(j);
    sf.c[v.pos] = v.sign * lp.objective[j];
    if (v.neg >= 0) {
      sf.a.col(v.neg).head(m) = -lp.eq_matrix.col(j);
      sf.c[v.neg] = -lp.objective[j];
    }
    sf.cost_offset += lp.objective[j] * v.offset;
  }
  sf.b.head(m) = lp.eq_rhs;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (sf.vars[j].offset != 0.0) sf.b.head(m) -= lp.eq_matrix.col(j) * sf.vars[j].offset;
  }

  int row = static_cast<int>(m);
  int slack = slack_begin;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double lo = lp.lower_bounds[j], hi = lp.upper_bounds[j];
    if (std::isfinite(lo) && std::isfinite(hi)) {
      sf.a(row, sf.vars[j].pos) = 1.0;
      sf.a(row, slack++) = 1.0;
      sf.b[row++] = hi - lo;
    }
  }
  return sf;
}

enum class PhaseResult { Optimal, Unbounded };

class Tableau {
 public:
  // Rows of `a` with negative rhs are flipped; one artificial per row.
  Tableau(const Matrix& a, const Vector& b) : rows_(a.rows()), cols_(a.cols()) {
    t_ = RowMatrix::Zero(rows_ + 1, cols_ + rows_ + 1);
    basis_.resize(rows_);
    flipped_.assign(rows_, false);
    for (Eigen::Index i = 0; i < rows_; ++i) {
      const double s = b[i] < 0 ? -1.0 : 1.0;
      flipped_[i] = s < 0;
      t_.row(i).head(cols_) = s * a.row(i);
      t_(i, cols_ + i) = 1.0;
      t_(i, rhs_col()) = s * b[i];
      basis_[i] = static_cast<int>(cols_ + i);
    }
    original_ = t_.topRows(rows_);
  }

  Eigen::Index rhs_col() const { return cols_ + rows_; }
  Eigen::Index cost_row() const { return rows_; }
  const std::vector<int>& basis() const { return basis_; }
  // False when the last reinversion met a numerically singular basis.
  bool healthy() const { return healthy_; }
  bool flipped(Eigen::Index i) const { return flipped_[i]; }
  double rhs(Eigen::Index i) const { return t_(i, rhs_col()); }
  double at(Eigen::Index i, Eigen::Index j) const { return t_(i, j); }
  // The cost row stores reduced costs and -objective in the rhs cell.
  double objective() const { return -t_(cost_row(), rhs_col()); }

  void set_phase1_costs() {
    costs_ = Vector::Zero(cols_ + rows_);
    costs_.tail(rows_).setOnes();
    load_cost_row();
  }

  void set_costs(const Vector& c) {
    costs_ = Vector::Zero(cols_ + rows_);
    costs_.head(cols_) = c;
    load_cost_row();
  }

  // Rebuild the whole tableau as B^-1 [A | I | b] from the original rows,
  // discarding the round-off accumulated by successive pivots.
  void reinvert() {
    if (rows_ == 0) return;
    healthy_ = false;
    Matrix basis(rows_, rows_);
    for (Eigen::Index r = 0; r < rows_; ++r) basis.col(r) = original_.col(basis_[r]);
    Eigen::PartialPivLU<Matrix> lu(basis);
    if (!(std::abs(lu.determinant()) > 0.0) || !std::isfinite(lu.rcond()) || lu.rcond() < 1e-14) return;
    healthy_ = true;
    t_.topRows(rows_) = lu.solve(Matrix(original_));
    for (Eigen::Index r = 0; r < rows_; ++r) {
      t_.row(r).head(cols_ + rows_).array() *= (t_.row(r).head(cols_ + rows_).array().abs() > 1e-14).cast<double>();
      t_(r, basis_[r]) = 1.0;
    }
    load_cost_row();
  }

  void pivot(Eigen::Index r, Eigen::Index j) {
    t_.row(r) /= t_(r, j);
    for (Eigen::Index i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      const double f = t_(i, j);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    t_.col(j).setZero();
    t_(r, j) = 1.0;
    basis_[r] = static_cast<int>(j);
  }

  PhaseResult run(Eigen::Index allowed_cols, const SolverOptions& opt, int limit, int& iterations) {
    int streak = 0;
    int since_reinvert = 0;
    for (int it = 0;; ++it) {
      if (it >= limit) {
        throw Error(ErrorCode::NumericalFailure, "simplex pivot limit of " + std::to_string(limit) + " exceeded");
      }
      if (opt.refactor_period > 0 && since_reinvert >= opt.refactor_period) {
        reinvert();
        since_reinvert = 0;
      }
      const bool bland = streak >= opt.degeneracy_streak;
      Eigen::Index enter = -1;
      double best = -opt.pivot_tol;
      for (Eigen::Index j = 0; j < allowed_cols; ++j) {
        const double dj = t_(cost_row(), j);
        if (dj < best) {
          enter = j;
          if (bland) break;
          best = dj;
        }
      }
      if (enter < 0) {
        // Confirm optimality on a freshly inverted tableau.
        if (since_reinvert == 0) return PhaseResult::Optimal;
        reinvert();
        since_reinvert = 0;
        continue;
      }

      // Harris two-pass ratio test: relax each bound by the feasibility
      // tolerance, then take the largest pivot element whose exact ratio
      // fits under the relaxed minimum (lowest basis index under Bland).
      double relaxed = kInf;
      for (Eigen::Index i = 0; i < rows_; ++i) {
        const double aij = t_(i, enter);
        if (aij > opt.pivot_tol) relaxed = std::min(relaxed, (std::max(t_(i, rhs_col()), 0.0) + opt.feasibility_tol) / aij);
      }
      if (relaxed == kInf) return PhaseResult::Unbounded;

      Eigen::Index leave = -1;
      double min_ratio = kInf;
      for (Eigen::Index i = 0; i < rows_; ++i) {
        const double aij = t_(i, enter);
        if (aij <= opt.pivot_tol) continue;
        const double ratio = std::max(t_(i, rhs_col()), 0.0) / aij;
        if (ratio > relaxed) continue;
        min_ratio = std::min(min_ratio, ratio);
        if (leave < 0 || (bland ? basis_[i] < basis_[leave] : aij > t_(leave, enter))) leave = i;
      }

      streak = min_ratio <= opt.pivot_tol ? streak + 1 : 0;
      pivot(leave, enter);
      ++iterations;
      ++since_reinvert;
    }
  }

 private:
  void load_cost_row() {
    t_.row(cost_row()).setZero();
    t_.row(cost_row()).head(cols_ + rows_) = costs_.transpose();
    for (Eigen::Index i = 0; i < rows_; ++i) {
      const double cb = costs_[basis_[i]];
      if (cb != 0.0) t_.row(cost_row()) -= cb * t_.row(i);
    }
  }

  Eigen::Index rows_;
  Eigen::Index cols_;
  RowMatrix t_;
  RowMatrix original_;
  Vector costs_;
  bool healthy_ = true;
  std::vector<int> basis_;
  std::vector<bool> flipped_;
};

// Recompute basic variables from the original data to shed accumulated
// tableau round-off. Keeps whichever point has the smaller residual.
Vector refine(const StandardForm& sf, const Tableau& tab, Vector xs) {
  const Eigen::Index rows = sf.a.rows();
  const Eigen::Index cols = sf.a.cols();
  if (rows == 0) return xs;
  Matrix basis(rows, rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const int bj = tab.basis()[r];
    if (bj < cols) {
      basis.col(r) = sf.a.col(bj);
    } else {
      basis.col(r).setZero();
      basis(bj - cols, r) = 1.0;
    }
  }
  Eigen::FullPivLU<Matrix> lu(basis);
  if (!lu.isInvertible()) return xs;
  const Vector xb = lu.solve(sf.b);
  Vector candidate = Vector::Zero(cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const int bj = tab.basis()[r];
    if (bj < cols) candidate[bj] = std::max(xb[r], 0.0);
  }
  const double old_res = (sf.a * xs - sf.b).lpNorm<Eigen::Infinity>();
  const double new_res = (sf.a * candidate - sf.b).lpNorm<Eigen::Infinity>();
  return new_res <= old_res ? candidate : xs;
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const SolverOptions& options) {
  validate(lp);
  const StandardForm sf = to_standard(lp);
  const Eigen::Index rows = sf.a.rows();
  const Eigen::Index cols = sf.a.cols();
  const int limit = options.max_iterations > 0 ? options.max_iterations : 50 * static_cast<int>(rows + cols);

  LpSolution sol;
  Tableau tab(sf.a, sf.b);
  tab.set_phase1_costs();
  tab.run(cols, options, limit, sol.iterations);

  const double scale = 1.0 + sf.b.lpNorm<1>();
  if (tab.objective() > options.feasibility_tol * scale) {
    if (!tab.healthy()) throw Error(ErrorCode::NumericalFailure, "simplex basis became singular in phase 1");
    sol.status = LpStatus::Infeasible;
    return sol;
  }

  // Drive zero-level artificials out of the basis; rows where that is
  // impossible are redundant and keep their artificial.
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (tab.basis()[r] < cols) continue;
    Eigen::Index best = -1;
    double mag = options.pivot_tol;
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (std::abs(tab.at(r, j)) > mag) {
        mag = std::abs(tab.at(r, j));
        best = j;
      }
    }
    if (best >= 0) tab.pivot(r, best);
  }

  tab.set_costs(sf.c);
  if (tab.run(cols, options, limit, sol.iterations) == PhaseResult::Unbounded) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }

  Vector xs = Vector::Zero(cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const int bj = tab.basis()[r];
    if (bj < cols) xs[bj] = std::max(tab.rhs(r), 0.0);
  }
  xs = refine(sf, tab, std::move(xs));

  const Eigen::Index n = lp.objective.size();
  sol.point.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const VarMap& v = sf.vars[j];
    double x = v.offset + v.sign * xs[v.pos];
    if (v.neg >= 0) x -= xs[v.neg];
    sol.point[j] = std::clamp(x, lp.lower_bounds[j], lp.upper_bounds[j]);
  }
  sol.status = LpStatus::Optimal;
  sol.objective_value = lp.objective.dot(sol.point);
  return sol;
}

}  // namespace minexp::lp
