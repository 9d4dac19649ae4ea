#include <cmath>
#include <cstdint>

#include "doctest.h"
#include "gmreslab/analysis.hpp"
#include "gmreslab/errors.hpp"
#include "gmreslab/generators.hpp"
#include "gmreslab/gmres.hpp"
#include "gmreslab/rng.hpp"
#include "test_support.hpp"

using namespace gmreslab;
using testsupport::random_matrix;
using testsupport::random_nonsingular;
using testsupport::random_spd;
using testsupport::rel_diff;

namespace {

GmresConfig pair_config(int max_iter, double rtol = 1e-10) {
  GmresConfig config;
  config.rtol_preconditioned = rtol;
  config.max_iter = max_iter;
  return config;
}

}  // namespace

TEST_CASE("sandwich check with the identity preconditioner is an equality") {
  const int n = 10;
  const LinearOperator a = LinearOperator::dense(random_nonsingular(n, 1));
  const Vector b = random_normal_vector(n, 2);
  const LeftRightResult pair = run_left_right_pair(
      a, b, Vector(n), LinearOperator::identity(n), pair_config(n));
  const SandwichReport report =
      sandwich_check(pair, LinearOperator::identity(n));
  CHECK(report.kappa == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(report.holds());
  for (std::size_t k = 0; k < report.lower.size(); ++k)
    CHECK(report.lower[k] ==
          doctest::Approx(report.middle[k]).epsilon(1e-12).scale(report.middle[0]));
}

TEST_CASE("sandwich check holds with a skewed diagonal preconditioner") {
  const int n = 10;
  const LinearOperator a = LinearOperator::dense(random_nonsingular(n, 5));
  const Vector b = random_normal_vector(n, 6);
  Vector d(n);
  for (int i = 0; i < n; ++i) d[i] = (i == 0) ? 1e3 : 1.0;
  const LinearOperator h = LinearOperator::diagonal(d);
  const LeftRightResult pair =
      run_left_right_pair(a, b, Vector(n), h, pair_config(n));
  const SandwichReport report = sandwich_check(pair, h);
  CHECK(report.kappa == doctest::Approx(1e3).epsilon(1e-10));
  CHECK(report.holds());
}

TEST_CASE("sandwich check holds on the rank-one perturbed inverse family") {
  const GeneratedCase c = householder_lee_case(20, 1e-3, 10.0, 11, 12);
  const LeftRightResult pair =
      run_left_right_pair(c.a, c.b, c.x0, c.h, pair_config(10, 1e-12));
  const SandwichReport report = sandwich_check(pair, c.h);
  CHECK(report.holds());
  CHECK(report.lower.size() >= 3);  // iterations 0..2
}

TEST_CASE("sandwich check requires stride-one true residual sampling") {
  const int n = 6;
  const LinearOperator a = LinearOperator::dense(random_nonsingular(n, 7));
  const Vector b = random_normal_vector(n, 8);
  GmresConfig config = pair_config(n);
  config.true_residual_stride = 3;
  const GmresResult sparse =
      gmres_solve(a, b, Vector(n), LinearOperator::identity(n), config);
  const LeftRightResult fake{sparse, sparse};
  CHECK_THROWS_AS(sandwich_check(fake, LinearOperator::identity(n)),
                  contract_error);
}

TEST_CASE("split sandwich degenerates to equality for identical pairs") {
  const int n = 8;
  const LinearOperator a = LinearOperator::dense(random_nonsingular(n, 21));
  const Vector b = random_normal_vector(n, 22);
  const LinearOperator h = LinearOperator::dense(random_spd(n, 23, 1.0, 3.0));
  const PreconditionerPair pair{LinearOperator::identity(n), h};
  GmresConfig config = pair_config(n);
  config.store_iterates = true;
  const GmresResult run = gmres_solve(a, b, Vector(n), pair, config);
  const SandwichReport report =
      split_sandwich_check(run, pair, run, pair, a, b);
  CHECK(report.kappa == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(report.holds());
}

TEST_CASE("split sandwich bounds right against split with a diagonal left factor") {
  const int n = 8;
  const Matrix a_dense = random_nonsingular(n, 31);
  const Matrix h_dense = random_spd(n, 32, 1.0, 3.0);
  const LinearOperator a = LinearOperator::dense(a_dense);
  const Vector b = random_normal_vector(n, 33);

  NormalSampler sampler(34);
  Vector d(n), d_inv(n);
  for (int i = 0; i < n; ++i) {
    d[i] = 2.0 + 0.5 * sampler.next();
    d_inv[i] = 1.0 / d[i];
  }
  Matrix h_dinv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h_dinv(i, j) = h_dense(i, j) * d_inv[j];

  const PreconditionerPair right_pair{LinearOperator::identity(n),
                                      LinearOperator::dense(h_dense)};
  const PreconditionerPair split_pair{LinearOperator::diagonal(d),
                                      LinearOperator::dense(h_dinv)};
  GmresConfig config = pair_config(n);
  config.store_iterates = true;
  const GmresResult run_right = gmres_solve(a, b, Vector(n), right_pair, config);
  const GmresResult run_split = gmres_solve(a, b, Vector(n), split_pair, config);

  const SandwichReport report = split_sandwich_check(
      run_right, right_pair, run_split, split_pair, a, b);
  CHECK(report.holds());
  // G reduces to the diagonal left factor, so kappa(G) = kappa(D)
  double d_max = 0.0, d_min = 1e300;
  for (int i = 0; i < n; ++i) {
    d_max = std::max(d_max, d[i]);
    d_min = std::min(d_min, d[i]);
  }
  CHECK(report.kappa == doctest::Approx(d_max / d_min).epsilon(1e-8));
}

TEST_CASE("split sandwich holds for random well-conditioned reweightings") {
  for (std::uint64_t seed : {41, 42, 43}) {
    const int n = 8;
    const Matrix a_dense = random_nonsingular(n, seed);
    const Matrix h_dense = random_spd(n, seed + 1, 1.0, 4.0);
    const Matrix g_dense = random_nonsingular(n, seed + 2, 4.0);  // well-cond
    const LinearOperator a = LinearOperator::dense(a_dense);
    const Vector b = random_normal_vector(n, seed + 3);

    // pair A = (I, H); pair B = (G, H G^{-1}) shares the combined product
    Matrix h_ginv(n, n);
    const LuFactorization g_lu = lu_factor(g_dense);
    Vector e(n);
    for (int j = 0; j < n; ++j) {
      e[j] = 1.0;
      h_ginv.set_col(j, mat_vec(h_dense, g_lu.solve(e)));
      e[j] = 0.0;
    }
    const PreconditionerPair pair_a{LinearOperator::identity(n),
                                    LinearOperator::dense(h_dense)};
    const PreconditionerPair pair_b{LinearOperator::dense(g_dense),
                                    LinearOperator::dense(h_ginv)};
    GmresConfig config = pair_config(n);
    config.store_iterates = true;
    const GmresResult run_a = gmres_solve(a, b, Vector(n), pair_a, config);
    const GmresResult run_b = gmres_solve(a, b, Vector(n), pair_b, config);
    const SandwichReport report =
        split_sandwich_check(run_a, pair_a, run_b, pair_b, a, b);
    CHECK(report.holds());
  }
}

TEST_CASE("split sandwich rejects pairs with different combined products") {
  const int n = 5;
  const LinearOperator a = LinearOperator::dense(random_nonsingular(n, 51));
  const Vector b = random_normal_vector(n, 52);
  const PreconditionerPair pair_a{LinearOperator::identity(n),
                                  LinearOperator::identity(n)};
  const PreconditionerPair pair_b{
      LinearOperator::diagonal(Vector({2, 2, 2, 2, 2})),
      LinearOperator::identity(n)};
  GmresConfig config = pair_config(n);
  config.store_iterates = true;
  const GmresResult run_a = gmres_solve(a, b, Vector(n), pair_a, config);
  const GmresResult run_b = gmres_solve(a, b, Vector(n), pair_b, config);
  CHECK_THROWS_AS(split_sandwich_check(run_a, pair_a, run_b, pair_b, a, b),
                  contract_error);
}

TEST_CASE("chebyshev interval bound endpoints") {
  CHECK(chebyshev_interval_eps(2.0, 2.0, 1) == 0.0);
  CHECK(chebyshev_interval_eps(1.0, 7.0, 0) == 1.0);
  CHECK_THROWS_AS(chebyshev_interval_eps(0.0, 1.0, 2), domain_error);
  CHECK_THROWS_AS(chebyshev_interval_eps(-1.0, 1.0, 2), domain_error);
}

TEST_CASE("chebyshev interval bound matches the dense-grid discrete minimax") {
  // 2001-point uniform grid of [1, 2] stands in for the full interval
  const int grid = 2001;
  Vector pts(grid);
  for (int i = 0; i < grid; ++i)
    pts[i] = 1.0 + static_cast<double>(i) / (grid - 1);
  const RemezResult discrete = remez_discrete_eps(pts, 3);
  const double interval = chebyshev_interval_eps(1.0, 2.0, 3);
  CHECK(std::fabs(discrete.eps - interval) <= 1e-6);
}

TEST_CASE("remez returns an annihilator when the degree covers the spectrum") {
  const Vector eigs{{1.0, 2.0, 3.0}};
  const RemezResult r = remez_discrete_eps(eigs, 3);
  CHECK(r.eps == 0.0);
  for (int i = 0; i < 3; ++i) CHECK(std::fabs(r.poly(eigs[i])) <= 1e-12);
  CHECK(r.poly(0.0) == doctest::Approx(1.0));
}

TEST_CASE("remez two-point closed form with a parameter-sweep optimality check") {
  const double a = 0.7, bb = 3.1;
  const RemezResult r = remez_discrete_eps(Vector({a, bb}), 1);
  const double expect = (bb - a) / (bb + a);
  CHECK(std::fabs(r.eps - expect) <= 1e-12);

  // sweep q(t) = 1 + c t around the optimal slope; no c does better
  const double c_star = -2.0 / (a + bb);
  for (int i = -50; i <= 50; ++i) {
    const double c = c_star * (1.0 + i * 1e-3);
    const double value = std::max(std::fabs(1.0 + c * a), std::fabs(1.0 + c * bb));
    CHECK(value >= expect - 1e-12);
  }
}

TEST_CASE("remez is dominated by the interval bound and non-increasing in k") {
  for (std::uint64_t seed : {61, 62, 63, 64}) {
    NormalSampler sampler(seed);
    const int m = 12;
    Vector eigs(m);
    for (int i = 0; i < m; ++i) eigs[i] = 1.0 + std::fabs(sampler.next());
    double lo = eigs[0], hi = eigs[0];
    for (int i = 0; i < m; ++i) {
      lo = std::min(lo, eigs[i]);
      hi = std::max(hi, eigs[i]);
    }
    double prev = 1.0;
    for (int k = 1; k <= 6; ++k) {
      const RemezResult r = remez_discrete_eps(eigs, k);
      CHECK(r.eps <= chebyshev_interval_eps(lo, hi, k) + 1e-12);
      CHECK(r.eps <= prev + 1e-12);
      prev = r.eps;
    }
  }
}

TEST_CASE("remez on a clustered spectrum stays below the enclosing interval bound") {
  NormalSampler sampler(78);
  std::vector<double> pts;
  for (int i = 0; i < 8; ++i) pts.push_back(1.1 + 0.02 * std::fabs(sampler.next()));
  for (int i = 0; i < 8; ++i) pts.push_back(1.9 - 0.02 * std::fabs(sampler.next()));
  const RemezResult r = remez_discrete_eps(Vector(pts), 5);
  CHECK(r.eps <= chebyshev_interval_eps(1.0, 2.0, 5) + 1e-12);
}

TEST_CASE("remez rejects non-positive spectra") {
  CHECK_THROWS_AS(remez_discrete_eps(Vector({1.0, -2.0}), 1), domain_error);
  CHECK_THROWS_AS(remez_discrete_eps(Vector({0.0, 2.0}), 1), domain_error);
}

TEST_CASE("remez results carry an equioscillation optimality certificate") {
  // the characterization theorem: if |q| <= eps on the whole set and q
  // alternates between +-eps on k+1 points of it, eps is the exact minimax
  for (std::uint64_t seed : {65, 66, 67, 68, 69}) {
    NormalSampler sampler(seed);
    const int m = 10 + static_cast<int>(seed % 6);
    std::vector<double> pts;
    for (int i = 0; i < m; ++i)
      pts.push_back(0.3 + std::fabs(sampler.next()) * 2.0);
    std::sort(pts.begin(), pts.end());
    const Vector eigs(pts);
    for (int k = 1; k <= 5; ++k) {
      const RemezResult r = remez_discrete_eps(eigs, k);
      REQUIRE(r.eps > 0.0);

      double worst = 0.0;
      for (double t : pts) worst = std::max(worst, std::fabs(r.poly(t)));
      CHECK(worst <= r.eps * (1.0 + 1e-10));

      int alternations = 0;
      int last_sign = 0;
      for (double t : pts) {
        const double v = r.poly(t);
        if (std::fabs(v) >= r.eps * (1.0 - 1e-8)) {
          const int sign = v >= 0.0 ? 1 : -1;
          if (sign != last_sign) ++alternations;
          last_sign = sign;
        }
      }
      CHECK(alternations >= k + 1);
    }
  }
}

TEST_CASE("eigenvalue bound holds for an unpreconditioned normal system") {
  const int n = 16;
  const Matrix q = random_orthogonal(n, 71);
  Vector eigs(n);
  for (int i = 0; i < n; ++i) eigs[i] = 1.0 + static_cast<double>(i) / (n - 1);
  Matrix scaled(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scaled(i, j) = q(i, j) * eigs[j];
  const Matrix a_dense = mat_mul(scaled, transpose(q));
  const Vector b = random_normal_vector(n, 72);

  GmresConfig config = pair_config(n, 1e-10);
  const GmresResult run = gmres_solve(LinearOperator::dense(a_dense), b,
                                      Vector(n), LinearOperator::identity(n),
                                      config);
  const BoundReport report = saad_bound_check(run.history, eigs, 1.0);
  CHECK(report.all_satisfied);
  CHECK(report.eps.front() == 1.0);
}

TEST_CASE("eigenvalue bound is trivially satisfied beyond the spectrum size") {
  // three distinct eigenvalues: from k = 3 on, the minimax value is zero and
  // the observed residual sits at rounding level under the 1e-12 slack
  const Vector eigs{{1.0, 1.5, 2.0}};
  const Matrix q = random_orthogonal(3, 76);
  Matrix scaled(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) scaled(i, j) = q(i, j) * eigs[j];
  const Matrix a_dense = mat_mul(scaled, transpose(q));
  const Vector b = random_normal_vector(3, 77);
  GmresConfig config = pair_config(3, 1e-14);
  const GmresResult run = gmres_solve(LinearOperator::dense(a_dense), b,
                                      Vector(3), LinearOperator::identity(3),
                                      config);
  REQUIRE(run.iterations == 3);
  const BoundReport report = saad_bound_check(run.history, eigs, 1.0);
  CHECK(report.eps.back() == 0.0);
  CHECK(report.observed.back() <= 1e-12);
  CHECK(report.all_satisfied);
}

TEST_CASE("numerical range support of the identity is the cosine") {
  const RangeSupport r = numerical_range_support(Matrix::identity(6), 64);
  for (std::size_t j = 0; j < r.angles.size(); ++j)
    CHECK(std::fabs(r.support[j] - std::cos(r.angles[j])) <= 1e-9);
}

TEST_CASE("numerical range of a rank-one bump is a circle") {
  const int n = 12;
  Matrix m = Matrix::identity(n);
  const double bump = 3.0;
  m(0, 1) += bump;  // I + bump * e_1 e_2^T with e_1 perp e_2
  const RangeSupport r = numerical_range_support(m, 64);
  for (std::size_t j = 0; j < r.angles.size(); ++j)
    CHECK(std::fabs(r.support[j] - (std::cos(r.angles[j]) + 0.5 * bump)) <=
          1e-6);
}

TEST_CASE("numerical range support at angle zero is the top symmetric eigenvalue") {
  const Matrix m = testsupport::random_symmetric(9, 73);
  const RangeSupport r = numerical_range_support(m, 4);
  const SymEigResult eig = jacobi_sym_eig(m);
  CHECK(std::fabs(r.support[0] - eig.eigenvalues[8]) <= 1e-9 * frobenius_norm(m));
}

TEST_CASE("numerical range support function satisfies convexity pairing") {
  const Matrix m = random_matrix(7, 7, 74);
  const int n_angles = 32;
  const RangeSupport r = numerical_range_support(m, n_angles);
  for (int j = 0; j < n_angles / 2; ++j)
    CHECK(r.support[static_cast<std::size_t>(j)] +
              r.support[static_cast<std::size_t>(j + n_angles / 2)] >=
          -1e-9 * frobenius_norm(m));
}

TEST_CASE("entrywise gap ratios") {
  const Matrix eye = Matrix::identity(4);
  const GapReport trivial = entrywise_gap(eye, eye);
  CHECK(trivial.gap_left == 0.0);
  CHECK(std::isinf(trivial.ratio));

  NormalSampler sampler(75);
  const int n = 8;
  Vector u(n), v(n);
  for (int i = 0; i < n; ++i) {
    u[i] = sampler.next();
    v[i] = sampler.next();
  }
  const double mu = 1e-3;
  Matrix ha = Matrix::identity(n);
  Matrix ah = Matrix::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ha(i, j) += mu * u[i] * v[j];
      ah(i, j) += 10.0 * u[i] * v[j];
    }
  const GapReport report = entrywise_gap(ha, ah);
  double outer_max = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      outer_max = std::max(outer_max, std::fabs(u[i] * v[j]));
  CHECK(report.gap_left == doctest::Approx(mu * outer_max).epsilon(1e-12));
  CHECK(report.ratio == doctest::Approx(1e4).epsilon(1e-12));
}

TEST_CASE("similarity check certifies explicitly similar matrices") {
  const int n = 9;
  const Matrix m1 = random_matrix(n, n, 81);
  const Matrix s = random_nonsingular(n, 82, 3.0);
  const LuFactorization s_lu = lu_factor(s);
  // M2 = S M1 S^{-1}
  Matrix m1_sinv(n, n);
  Vector e(n);
  for (int j = 0; j < n; ++j) {
    e[j] = 1.0;
    m1_sinv.set_col(j, mat_vec(m1, s_lu.solve(e)));
    e[j] = 0.0;
  }
  const Matrix m2 = mat_mul(s, m1_sinv);
  const SimilarityReport report = similarity_check(m1, m2, 8);
  CHECK(report.within_tolerance);

  const SimilarityReport exact = similarity_check(m1, m1, 8);
  for (double d : exact.difference) CHECK(d == 0.0);

  CHECK_THROWS_AS(similarity_check(m1, m2, 11), domain_error);
}

TEST_CASE("similarity check accepts both preconditioned products of a generated case") {
  const GeneratedCase c = householder_lee_case(15, 0.01, 5.0, 83, 84);
  const Matrix ha = mat_mul(c.h_dense, c.a_dense);
  const Matrix ah = mat_mul(c.a_dense, c.h_dense);
  CHECK(similarity_check(ha, ah, 8).within_tolerance);
}
