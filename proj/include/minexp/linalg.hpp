#pragma once

#include <Eigen/Dense>

namespace minexp::linalg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Default relative pivot threshold for rank decisions.
inline constexpr double kRankTol = 1e-10;

/// Minimiser of ||a z - y||_2 through column-pivoted Householder QR.
/// Throws RankDeficient when the numerical column rank is below a.cols().
/// A matrix with no columns yields an empty vector.
Vector least_squares(const Matrix& a, const Vector& y, double tol = kRankTol);

/// Number of QR pivots with |R_ii| > tol * max |R_jj|.
int column_rank(const Matrix& a, double tol = kRankTol);

/// Orthonormal basis (as columns) of the numerical null space of a. The rank
/// decision is the same one column_rank makes, so
/// column_rank(a, tol) + nullspace_basis(a, tol).cols() == a.cols().
Matrix nullspace_basis(const Matrix& a, double tol = kRankTol);

/// Throws InvalidArgument if any entry is NaN or infinite.
void require_finite(const Matrix& a, const char* what);

}  // namespace minexp::linalg
