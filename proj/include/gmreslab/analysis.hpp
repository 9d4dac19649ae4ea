#ifndef GMRESLAB_ANALYSIS_HPP
#define GMRESLAB_ANALYSIS_HPP

#include <vector>

#include "gmreslab/gmres.hpp"
#include "gmreslab/linear_operator.hpp"
#include "gmreslab/matrix.hpp"

namespace gmreslab {

/// Per-iteration record of the residual sandwich
///   lower_k <= middle_k <= kappa * lower_k.
/// For the left-vs-right check the entries are Euclidean true residuals of
/// the right and left runs; for the split generalization they are
/// H_L-weighted residual norms of the two runs.
struct SandwichReport {
  std::vector<double> lower;        // ||r_k|| of the optimal run
  std::vector<double> middle;       // ||r~_k|| of the compared run
  std::vector<double> upper_bound;  // kappa * lower_k
  double kappa = 0.0;
  // Signed violations relative to the compared quantity; <= slack when the
  // inequalities hold.
  double max_violation_lower = 0.0;  // max_k (lower_k - middle_k)/middle_k
  double max_violation_upper = 0.0;  // max_k (middle_k - kappa*lower_k)/(kappa*lower_k)

  /// True when both inequalities hold with relative slack plus an absolute
  /// floor of 1e-13 times the initial residual, which absorbs rounding noise
  /// once the curves approach machine precision.
  bool holds(double rel_slack = 1e-10) const;
};

/// Verifies ||r_k|| <= ||r~_k|| <= kappa(H) ||r_k|| on a left/right pair
/// sharing (A, b, x0). Both histories must sample true residuals at every
/// iteration; the comparison truncates to the shorter run.
SandwichReport sandwich_check(const LeftRightResult& pair,
                              const LinearOperator& h);

/// Split generalization: for two runs with H_R H_L = H~_R H~_L, verifies
/// ||H_L r_k|| <= ||H_L r~_k|| <= kappa(H~_L H_L^{-1}) ||H_L r_k||.
/// Residuals are recomputed from stored iterates, so both configs must have
/// used store_iterates.
SandwichReport split_sandwich_check(const GmresResult& result_a,
                                    const PreconditionerPair& pair_a,
                                    const GmresResult& result_b,
                                    const PreconditionerPair& pair_b,
                                    const LinearOperator& a, const Vector& b);

/// Minimax value over [a, b] of degree-<=k polynomials with q(0) = 1:
/// 1 / T_k((b+a)/(b-a)) via the hyperbolic-cosine form. Requires 0 < a <= b.
double chebyshev_interval_eps(double a, double b, int k);

/// Polynomial in the Chebyshev basis of [t_lo, t_hi], or in product form
/// prod (1 - t/root) for annihilators.
class MinimaxPolynomial {
 public:
  MinimaxPolynomial() = default;  // constant 0 in chebyshev form

  static MinimaxPolynomial chebyshev_form(double t_lo, double t_hi,
                                          std::vector<double> coeff);
  static MinimaxPolynomial annihilator(std::vector<double> roots);

  double operator()(double t) const;

 private:
  double t_lo_ = 0.0, t_hi_ = 0.0;
  std::vector<double> coeff_;
  std::vector<double> roots_;
  bool product_form_ = false;
};

struct RemezResult {
  double eps = 0.0;
  MinimaxPolynomial poly;
  int exchange_steps = 0;
};

/// Exact discrete minimax of |q| with q(0) = 1 over a finite positive
/// spectrum, by single-point exchange on an equioscillation reference.
/// When the spectrum has at most k distinct points the annihilating
/// interpolant gives eps = 0.
RemezResult remez_discrete_eps(const Vector& eigs, int k);

struct BoundReport {
  std::vector<double> eps;       // minimax bound per k, eps[0] = 1
  double multiplier = 1.0;       // kappa(P)
  std::vector<double> observed;  // relative minimized residual per k
  std::vector<bool> satisfied;   // observed <= eps * multiplier + 1e-12
  bool all_satisfied = true;
};

/// Checks the eigenvalue convergence bound observed <= eps^(k) kappa(P)
/// against the minimized-norm curve of a run. Falls back to the interval
/// bound when the exchange algorithm fails.
BoundReport saad_bound_check(const GmresHistory& history, const Vector& eigs,
                             double p_cond);

struct RangeSupport {
  std::vector<double> angles;   // theta_j in [0, 2pi)
  std::vector<double> support;  // h(theta_j) = max Re(e^{-i theta} W(M))
};

/// Support function of the numerical range, sampled at n_angles uniform
/// directions. Each value is the top eigenvalue of the Hermitian part of
/// e^{-i theta} M, computed through the real symmetric 2n x 2n embedding
/// [[C_re, -C_im], [C_im, C_re]].
RangeSupport numerical_range_support(const Matrix& m, int n_angles);

struct GapReport {
  double gap_left = 0.0;   // max |I - HA|
  double gap_right = 0.0;  // max |I - AH|
  double ratio = 0.0;      // gap_right / gap_left, +inf when gap_left ~ 0
};

GapReport entrywise_gap(const Matrix& ha, const Matrix& ah);

struct SimilarityReport {
  std::vector<double> trace_m1;  // tr(M1^j), j = 1..j_max
  std::vector<double> trace_m2;
  std::vector<double> difference;
  bool within_tolerance = true;  // |diff_j| <= 1e-8 (1 + |tr(M1^j)|) for all j
};

/// Certifies equal spectra through traces of powers, a similarity invariant
/// that avoids any nonsymmetric eigensolver. Requires j_max <= 10.
SimilarityReport similarity_check(const Matrix& m1, const Matrix& m2,
                                  int j_max);

}  // namespace gmreslab

#endif
