#include "minexp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "minexp/error.hpp"

namespace minexp::linalg {

namespace {

// Pivots above the relative threshold. R's diagonal is non-increasing in
// magnitude under column pivoting, so counting the leading run is enough.
int pivot_rank(const Eigen::ColPivHouseholderQR<Matrix>& qr, double tol) {
  const Matrix& r = qr.matrixQR();
  const Eigen::Index diag = std::min(r.rows(), r.cols());
  if (diag == 0) return 0;
  const double top = std::abs(r(0, 0));
  if (top == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < diag; ++i) {
    if (std::abs(r(i, i)) > tol * top) ++rank;
    else break;
  }
  return rank;
}

}  // namespace

void require_finite(const Matrix& a, const char* what) {
  if (!a.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " has non-finite entries");
  }
}

Vector least_squares(const Matrix& a, const Vector& y, double tol) {
  if (y.size() != a.rows()) {
    throw Error(ErrorCode::InvalidArgument, "least_squares: rhs length " + std::to_string(y.size()) +
                                                " != rows " + std::to_string(a.rows()));
  }
  if (a.cols() == 0) return Vector(0);
  if (a.rows() < a.cols()) {
    throw Error(ErrorCode::RankDeficient, "least_squares: more columns than rows");
  }
  Eigen::ColPivHouseholderQR<Matrix> qr(a);
  const int rank = pivot_rank(qr, tol);
  if (rank < a.cols()) {
    throw Error(ErrorCode::RankDeficient, "least_squares: column rank " + std::to_string(rank) + " < " +
                                              std::to_string(a.cols()));
  }
  return qr.solve(y);
}

int column_rank(const Matrix& a, double tol) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::ColPivHouseholderQR<Matrix> qr(a);
  return pivot_rank(qr, tol);
}

Matrix nullspace_basis(const Matrix& a, double tol) {
  const Eigen::Index n = a.cols();
  if (n == 0) return Matrix(0, 0);
  if (a.rows() == 0) return Matrix::Identity(n, n);

  Eigen::ColPivHouseholderQR<Matrix> qr(a);
  const int r = pivot_rank(qr, tol);
  const Eigen::Index q = n - r;
  if (q == 0) return Matrix(n, 0);

  // a P = Q [R11 R12; 0 ~0]; the null space of [R11 R12] (in permuted
  // coordinates) is spanned by [-R11^{-1} R12; I].
  const Matrix& packed = qr.matrixQR();
  Matrix basis(n, q);
  basis.setZero();
  if (r > 0) {
    const Matrix r12 = packed.topRightCorner(r, q);
    basis.topRows(r) = -packed.topLeftCorner(r, r).triangularView<Eigen::Upper>().solve(r12);
  }
  basis.bottomRows(q).setIdentity();

  Matrix unpermuted = qr.colsPermutation() * basis;
  Eigen::HouseholderQR<Matrix> orth(unpermuted);
  return orth.householderQ() * Matrix::Identity(n, q);
}

}  // namespace minexp::linalg
