#include "gmreslab/generators.hpp"

#include <cmath>
#include <string>

#include "gmreslab/errors.hpp"
#include "gmreslab/factorizations.hpp"
#include "gmreslab/rng.hpp"

namespace gmreslab {

namespace {

Matrix random_square(int n, NormalSampler& sampler) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = sampler.next();
  return m;
}

void verify(bool condition, const std::string& what) {
  if (!condition)
    throw contract_error("generated case failed verification: " + what);
}

void verify_nonsingular(const Matrix& m, const std::string& what) {
  try {
    (void)lu_factor(m);
  } catch (const singular_error&) {
    throw contract_error("generated case failed verification: " + what);
  }
}

// Q * diag(d) * Q^T without forming the diagonal matrix.
Matrix spectral_assemble(const Matrix& q, const Vector& d) {
  const int n = q.rows();
  Matrix scaled(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scaled(i, j) = q(i, j) * d[j];
  return mat_mul(scaled, transpose(q));
}

}  // namespace

Matrix random_orthogonal(int n, std::uint64_t seed) {
  if (n < 2) throw domain_error("random_orthogonal: n must be at least 2");
  NormalSampler sampler(seed);
  for (int attempt = 0; attempt < 5; ++attempt) {
    const Matrix m = random_square(n, sampler);
    try {
      return qr_orthonormal(m).q;
    } catch (const factorization_error&) {
      // measure-zero rank deficiency; draw again from the same stream
    }
  }
  throw numerical_error("random_orthogonal: repeated rank-deficient draws");
}

GeneratedCase householder_lee_case(int n, double mu, double lambda,
                                   std::uint64_t seed,
                                   std::uint64_t rhs_seed) {
  if (n < 2) throw domain_error("householder_lee_case: n must be at least 2");
  if (!(0.0 < mu && mu < lambda))
    throw domain_error("householder_lee_case: requires 0 < mu < lambda");

  Vector eigs(n);
  for (int i = 0; i < n; ++i)
    eigs[i] = mu + (lambda - mu) * static_cast<double>(i) / (n - 1);

  const Matrix q = random_orthogonal(n, seed);
  Matrix a_dense = spectral_assemble(q, eigs);
  // exact symmetry keeps u and v exact left/right eigenvectors
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double avg = 0.5 * (a_dense(i, j) + a_dense(j, i));
      a_dense(i, j) = avg;
      a_dense(j, i) = avg;
    }

  const Vector u = q.col(n - 1);  // unit right eigenvector for lambda
  const Vector v = q.col(0);      // unit left eigenvector for mu

  LinearOperator a_op = LinearOperator::dense(a_dense);
  LinearOperator h_op = LinearOperator::rank_one_update(
      LinearOperator::inverse_of(lu_factor(a_dense)), u, v);
  Matrix h_dense = h_op.as_dense();

  verify(std::fabs(norm2(u) - 1.0) <= 1e-12, "u is not a unit vector");
  verify(std::fabs(norm2(v) - 1.0) <= 1e-12, "v is not a unit vector");
  verify(std::fabs(dot(u, v)) <= 1e-12, "u and v are not orthogonal");

  const Matrix ha = mat_mul(h_dense, a_dense);
  const Matrix ah = mat_mul(a_dense, h_dense);
  Matrix ha_model = Matrix::identity(n);
  Matrix ah_model = Matrix::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ha_model(i, j) += mu * u[i] * v[j];
      ah_model(i, j) += lambda * u[i] * v[j];
    }
  verify(max_abs(ha - ha_model) <= 1e-9, "HA differs from I + mu u v^T");
  verify(max_abs(ah - ah_model) <= 1e-9, "AH differs from I + lambda u v^T");

  const Matrix grade_residual =
      mat_mul(ha, ha) - (2.0 * ha - Matrix::identity(n));
  verify(max_abs(grade_residual) <= 1e-8, "(HA)^2 != 2 HA - I");
  verify_nonsingular(h_dense, "H is singular");

  GeneratedCase c{std::move(a_op),
                  std::move(h_op),
                  std::move(a_dense),
                  std::move(h_dense),
                  random_normal_vector(n, rhs_seed),
                  Vector(n),
                  std::move(eigs),
                  {}};
  c.meta.family = "householder-lee";
  c.meta.n = n;
  c.meta.mu = mu;
  c.meta.lambda = lambda;
  c.meta.seed = seed;
  c.meta.rhs_seed = rhs_seed;
  return c;
}

GeneratedCase eigvec_cond_case(int n, double K, SpectrumSpec spectrum,
                               std::uint64_t seed, std::uint64_t rhs_seed) {
  if (n < 3) throw domain_error("eigvec_cond_case: n must be at least 3");
  if (!(K >= 1.0)) throw domain_error("eigvec_cond_case: K must be >= 1");
  if (!(spectrum.center > 0.0) || spectrum.half_width < 0.0 ||
      spectrum.half_width >= spectrum.center)
    throw domain_error(
        "eigvec_cond_case: spectrum must exclude the origin "
        "(0 <= half_width < center)");

  Vector eigs(n);
  const double lo = spectrum.center - spectrum.half_width;
  const double hi = spectrum.center + spectrum.half_width;
  for (int i = 0; i < n; ++i)
    eigs[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);

  const Matrix y = random_orthogonal(n, seed);
  Matrix x = random_orthogonal(n, splitmix64(seed));
  for (int i = 0; i < n; ++i) x(i, 0) = x(i, 0) / K + x(i, n - 1);

  // A = X Lambda Y^T
  Matrix x_scaled(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x_scaled(i, j) = x(i, j) * eigs[j];
  Matrix a_dense = mat_mul(x_scaled, transpose(y));

  // H = Y X^{-1}, column by column through the LU of X
  const LuFactorization x_lu = lu_factor(x);
  Matrix h_dense(n, n);
  Vector e(n);
  for (int j = 0; j < n; ++j) {
    e[j] = 1.0;
    h_dense.set_col(j, mat_vec(y, x_lu.solve(e)));
    e[j] = 0.0;
  }

  const double kappa_x = cond2(x);

  const Matrix ha = mat_mul(h_dense, a_dense);
  const Matrix ha_model = spectral_assemble(y, eigs);
  verify(frobenius_norm(ha - ha_model) <=
             1e-7 * frobenius_norm(ha_model),
         "HA differs from Y Lambda Y^T");

  // AH = X Lambda X^{-1}; tolerance scales with kappa(X) since both sides
  // pass through X^{-1}
  const Matrix ah = mat_mul(a_dense, h_dense);
  Matrix ah_model(n, n);
  for (int j = 0; j < n; ++j) {
    e[j] = 1.0;
    Vector w = x_lu.solve(e);
    for (int i = 0; i < n; ++i) w[i] *= eigs[i];
    ah_model.set_col(j, mat_vec(x, w));
    e[j] = 0.0;
  }
  verify(frobenius_norm(ah - ah_model) <=
             1e-6 * std::max(1.0, kappa_x) * frobenius_norm(ah_model),
         "AH differs from X Lambda X^{-1}");
  verify_nonsingular(a_dense, "A is singular");
  verify_nonsingular(h_dense, "H is singular");

  // Manufactured solution: b = A xhat with xhat standard normal. A direct
  // normal b would be amplified by X^{-1} into two giant eigencomponents of
  // the left-preconditioned residual, collapsing the left curve in two
  // iterations and breaking the near-coincidence of the left and right runs
  // that this family is built to exhibit.
  const Vector b = mat_vec(a_dense, random_normal_vector(n, rhs_seed));

  GeneratedCase c{LinearOperator::dense(a_dense),
                  LinearOperator::dense(h_dense),
                  std::move(a_dense),
                  std::move(h_dense),
                  b,
                  Vector(n),
                  std::move(eigs),
                  {}};
  c.meta.family = "eigvec-cond";
  c.meta.n = n;
  c.meta.K = K;
  c.meta.seed = seed;
  c.meta.rhs_seed = rhs_seed;
  c.meta.kappa_x = kappa_x;
  return c;
}

std::pair<Matrix, Matrix> materialize(const GeneratedCase& c) {
  const int n = c.meta.n;
  Vector e(n);
  for (int j = 0; j < n; ++j) {
    e[j] = 1.0;
    const Vector a_col = c.a.apply(e);
    const Vector h_col = c.h.apply(e);
    e[j] = 0.0;
    const double a_scale = std::max(norm2(a_col), 1e-300);
    const double h_scale = std::max(norm2(h_col), 1e-300);
    if (norm2(a_col - c.a_dense.col(j)) > 1e-12 * a_scale ||
        norm2(h_col - c.h_dense.col(j)) > 1e-12 * h_scale)
      throw contract_error("materialize: dense form disagrees with operator");
  }
  return {c.a_dense, c.h_dense};
}

}  // namespace gmreslab
