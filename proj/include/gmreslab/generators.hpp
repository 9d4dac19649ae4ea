#ifndef GMRESLAB_GENERATORS_HPP
#define GMRESLAB_GENERATORS_HPP

#include <cstdint>
#include <string>
#include <utility>

#include "gmreslab/linear_operator.hpp"
#include "gmreslab/matrix.hpp"

namespace gmreslab {

struct CaseMetadata {
  std::string family;  // "householder-lee" or "eigvec-cond"
  int n = 0;
  double mu = 0.0;      // householder-lee only
  double lambda = 0.0;  // householder-lee only
  double K = 0.0;       // eigvec-cond only
  std::uint64_t seed = 0;
  std::uint64_t rhs_seed = 0;
  double kappa_x = 0.0;  // eigvec-cond only, measured cond2(X)
};

/// A generated (A, H, b) instance with known spectrum and verified
/// construction identities.
struct GeneratedCase {
  LinearOperator a;
  LinearOperator h;
  Matrix a_dense;
  Matrix h_dense;
  Vector b;
  Vector x0;
  Vector eigenvalues;  // the prescribed spectrum (construction input)
  CaseMetadata meta;
};

/// Haar-like random orthogonal matrix: QR of a seeded standard-normal matrix
/// with the R diagonal normalized positive. Deterministic per seed.
Matrix random_orthogonal(int n, std::uint64_t seed);

/// Rank-one perturbed inverse preconditioner family.
///
/// A = Q diag(eigs) Q^T with eigs uniformly spaced in [mu, lambda], and
/// H = A^{-1} + u v^T where u, v are the unit eigenvectors for lambda and mu.
/// Then HA = I + mu u v^T and AH = I + lambda u v^T, so H is an entrywise
/// good left inverse and poor right inverse while GMRES terminates in two
/// iterations either way. All identities are verified at construction.
GeneratedCase householder_lee_case(int n, double mu, double lambda,
                                   std::uint64_t seed, std::uint64_t rhs_seed);

struct SpectrumSpec {
  double center = 1.5;
  double half_width = 0.5;
};

/// Eigenvector-conditioning family: A = X Lambda Y^{-1}, H = Y X^{-1} with
/// Y orthogonal and X an orthogonal matrix whose first column is replaced by
/// (1/K) x_1 + x_n, driving kappa(X) to roughly K. The preconditioned
/// operators HA = Y Lambda Y^T and AH = X Lambda X^{-1} share the prescribed
/// spectrum but have eigenvector condition numbers 1 and kappa(X).
GeneratedCase eigvec_cond_case(int n, double K, SpectrumSpec spectrum,
                               std::uint64_t seed, std::uint64_t rhs_seed);

/// Returns the dense forms after checking them against operator application
/// column by column.
std::pair<Matrix, Matrix> materialize(const GeneratedCase& c);

}  // namespace gmreslab

#endif
