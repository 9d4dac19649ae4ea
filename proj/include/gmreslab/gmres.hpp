#ifndef GMRESLAB_GMRES_HPP
#define GMRESLAB_GMRES_HPP

#include <optional>
#include <vector>

#include "gmreslab/linear_operator.hpp"
#include "gmreslab/matrix.hpp"

namespace gmreslab {

enum class PrecondMode { NoPrecond, Left, Right, Split };

enum class GmresStatus {
  ConvergedPreconditioned,
  ConvergedTrue,
  MaxIterations,
  HappyBreakdown
};

/// Solver controls.
///
/// The solve always monitors two residuals: the preconditioned residual
/// ||H_L r_k|| is available for free from the Givens recurrence (in the
/// active inner product), while the true residual ||b - A x_k|| is
/// recomputed explicitly every `true_residual_stride` iterations and at
/// termination. When `rtol_true` is set the preconditioned criterion only
/// triggers a true-residual check and the solve stops once the true
/// relative residual passes `rtol_true`; this guards against stopping
/// prematurely on a preconditioned estimate.
///
/// `weight_cholesky`, when present, must be the lower-triangular factor L of
/// the weight W = L*L^T; inner products are then <x,y> = (L^T y).(L^T x).
struct GmresConfig {
  PrecondMode mode = PrecondMode::NoPrecond;
  double rtol_preconditioned = 1e-10;
  std::optional<double> rtol_true;
  int max_iter = 100;
  double breakdown_tol = 1e-14;
  bool reorthogonalize = true;
  int true_residual_stride = 1;
  std::optional<Matrix> weight_cholesky;
  bool store_iterates = false;  // keep x_k for every k (analysis support)
  bool store_basis = false;     // keep the Arnoldi basis (analysis support)
};

struct GmresHistory {
  // ||H_L r_k|| in the active inner product, from the Givens recurrence.
  // Entry 0 is the initial preconditioned residual norm; non-increasing.
  std::vector<double> preconditioned_residual_norm;
  // Euclidean ||b - A x_k|| where sampled, nullopt otherwise.
  std::vector<std::optional<double>> true_residual_norm;
  // x_k for every k when requested via store_iterates.
  std::vector<Vector> iterates;

  double preconditioned_relative(int k) const;
  std::optional<double> true_relative(int k) const;
};

struct GmresResult {
  Vector x;
  GmresHistory history;
  GmresStatus status = GmresStatus::MaxIterations;
  int iterations = 0;
  // F-orthonormal Arnoldi vectors v_1..v_{k+1} when requested.
  std::vector<Vector> basis;
};

enum class StoppingVerdict { Premature, Delayed, Aligned };

struct StoppingReport {
  std::optional<int> k_preconditioned;  // first k at rtol in precond. norm
  std::optional<int> k_true;            // first sampled k at rtol in true norm
  StoppingVerdict verdict = StoppingVerdict::Aligned;
};

/// Builds the (H_L, H_R) pair placing H according to the mode:
/// Left -> (H, I), Right -> (I, H), NoPrecond -> (I, I).
PreconditionerPair preconditioner_for_mode(PrecondMode mode,
                                           const LinearOperator& h);

/// Non-restarted GMRES on A x = b, split-preconditioned by `precond`.
/// Arnoldi with modified Gram-Schmidt (optional second pass) runs on
/// M = H_L o A o H_R starting from H_L r0; the least-squares problem is
/// solved through Givens rotations and the iterate is mapped back through
/// x = x0 + H_R(correction).
GmresResult gmres_solve(const LinearOperator& a, const Vector& b,
                        const Vector& x0, const PreconditionerPair& precond,
                        const GmresConfig& config);

/// Convenience overload: places a single preconditioner per config.mode.
GmresResult gmres_solve(const LinearOperator& a, const Vector& b,
                        const Vector& x0, const LinearOperator& h,
                        const GmresConfig& config);

/// Euclidean norm of b - A x.
double true_residual_norm(const LinearOperator& a, const Vector& b,
                          const Vector& x);

/// Compares the first iteration reaching `rtol` in the preconditioned norm
/// against the first sampled iteration reaching it in the true norm.
/// Premature: the preconditioned criterion fires first; Delayed: it lags.
StoppingReport stopping_report(const GmresHistory& h, double rtol);

struct LeftRightResult {
  GmresResult left;
  GmresResult right;
};

/// Runs left-preconditioned (H, I) and right-preconditioned (I, H) GMRES on
/// identical inputs. True residuals are sampled every iteration on both runs.
LeftRightResult run_left_right_pair(const LinearOperator& a, const Vector& b,
                                    const Vector& x0, const LinearOperator& h,
                                    GmresConfig config);

}  // namespace gmreslab

#endif
