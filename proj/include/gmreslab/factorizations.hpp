#ifndef GMRESLAB_FACTORIZATIONS_HPP
#define GMRESLAB_FACTORIZATIONS_HPP

#include <utility>
#include <vector>

#include "gmreslab/matrix.hpp"

namespace gmreslab {

/// Packed LU factors of a square matrix with partial pivoting.
class LuFactorization {
 public:
  int dim() const { return lu_.rows(); }

  /// Solves A x = b for the factored A.
  Vector solve(const Vector& b) const;

  /// Reassembles P*A from the packed factors (test support).
  Matrix reconstruct_permuted() const;

  /// Row permutation as a vector p with (P*A)(i,:) = A(p[i],:).
  const std::vector<int>& permutation() const { return perm_; }

  double determinant() const;

 private:
  friend LuFactorization lu_factor(const Matrix& m);

  Matrix lu_;               // L (unit diagonal, below) and U (diagonal and above)
  std::vector<int> perm_;
  int perm_sign_ = 1;
};

/// Partial-pivoting LU. Throws singular_error when a pivot falls below
/// 1e-14 * max|A|.
LuFactorization lu_factor(const Matrix& m);

Vector lu_solve(const LuFactorization& f, const Vector& b);

/// Cholesky factor L (lower triangular) with m = L*L^T. The input must be
/// symmetric to 1e-12 relative; a non-positive pivot raises definiteness_error.
Matrix cholesky(const Matrix& m);

struct QrResult {
  Matrix q;  // orthogonal
  Matrix r;  // upper triangular, non-negative diagonal
};

/// Householder QR of a square full-rank matrix. Signs are normalized so that
/// the diagonal of R is non-negative.
QrResult qr_orthonormal(const Matrix& m);

struct SymEigResult {
  Vector eigenvalues;   // ascending
  Matrix eigenvectors;  // columns match eigenvalues
};

/// Cyclic Jacobi eigensolver for symmetric matrices. Sweeps until the
/// off-diagonal Frobenius norm falls below 1e-12 * ||m||_F.
SymEigResult jacobi_sym_eig(const Matrix& m);

struct SvdResult {
  std::vector<double> singular_values;  // non-increasing
  Matrix u;
  Matrix v;  // A = U * diag(sigma) * V^T
};

/// One-sided Jacobi SVD. Rotations act on column pairs of A directly, which
/// keeps small singular values accurate without forming A^T A.
SvdResult svd(const Matrix& m);

/// Spectral condition number sigma_max/sigma_min. Returns +infinity when
/// sigma_min < 1e-15 * sigma_max.
double cond2(const Matrix& m);

}  // namespace gmreslab

#endif
