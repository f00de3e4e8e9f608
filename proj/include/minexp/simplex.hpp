#pragma once

#include <limits>
#include <string>

#include "minexp/linalg.hpp"

namespace minexp::lp {

using linalg::Matrix;
using linalg::Vector;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// minimize objective' x  s.t.  eq_matrix x = eq_rhs,  lower <= x <= upper.
/// Bounds may be -inf / +inf.
struct LinearProgram {
  Vector objective;
  Matrix eq_matrix;
  Vector eq_rhs;
  Vector lower_bounds;
  Vector upper_bounds;

  /// Convenience: x >= 0, no upper bounds.
  static LinearProgram nonnegative(Vector c, Matrix a, Vector b);
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

const char* to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Vector point;  // meaningful only when Optimal
  double objective_value = 0.0;
  int iterations = 0;
};

struct SolverOptions {
  // 0 means 50 * (rows + cols) of the standard-form problem, per phase.
  int max_iterations = 0;
  // Consecutive degenerate pivots after which Bland's rule takes over.
  int degeneracy_streak = 200;
  // Pivots between rebuilds of the tableau from the original data.
  int refactor_period = 50;
  double pivot_tol = 1e-9;
  double feasibility_tol = 1e-9;
};

/// Two-phase dense simplex with periodic reinversion and a Harris ratio test.
/// Throws NumericalFailure when the pivot limit is hit or the basis turns
/// singular, InvalidArgument on malformed programs.
LpSolution solve_lp(const LinearProgram& lp, const SolverOptions& options = {});

}  // namespace minexp::lp
