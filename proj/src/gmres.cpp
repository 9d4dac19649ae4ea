#include "gmreslab/gmres.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "gmreslab/errors.hpp"

namespace gmreslab {

namespace {

void validate_config(const GmresConfig& config) {
  if (!(config.rtol_preconditioned > 0.0 && config.rtol_preconditioned < 1.0))
    throw domain_error("GmresConfig: rtol_preconditioned must be in (0,1)");
  if (config.rtol_true &&
      !(*config.rtol_true > 0.0 && *config.rtol_true < 1.0))
    throw domain_error("GmresConfig: rtol_true must be in (0,1)");
  if (config.max_iter < 1)
    throw domain_error("GmresConfig: max_iter must be at least 1");
  if (config.true_residual_stride < 1)
    throw domain_error("GmresConfig: true_residual_stride must be at least 1");
  if (config.breakdown_tol <= 0.0)
    throw domain_error("GmresConfig: breakdown_tol must be positive");
  if (config.weight_cholesky) {
    const Matrix& l = *config.weight_cholesky;
    if (l.rows() != l.cols())
      throw domain_error("GmresConfig: weight_cholesky must be square");
    for (int i = 0; i < l.rows(); ++i) {
      if (l(i, i) <= 0.0)
        throw domain_error(
            "GmresConfig: weight_cholesky needs a positive diagonal");
      for (int j = i + 1; j < l.cols(); ++j)
        if (l(i, j) != 0.0)
          throw domain_error(
              "GmresConfig: weight_cholesky must be lower triangular");
    }
  }
}

// Inner product <x,y> = (F y).(F x) with F = L^T, or plain Euclidean.
class InnerProduct {
 public:
  explicit InnerProduct(const std::optional<Matrix>& weight_cholesky)
      : l_(weight_cholesky ? &*weight_cholesky : nullptr) {}

  bool weighted() const { return l_ != nullptr; }

  // F x = L^T x (upper-triangular product); identity when unweighted.
  Vector map(const Vector& x) const {
    if (!l_) return x;
    const int n = x.dim();
    Vector y(n);
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = i; j < n; ++j) s += (*l_)(j, i) * x[j];
      y[i] = s;
    }
    return y;
  }

 private:
  const Matrix* l_;
};

}  // namespace

double GmresHistory::preconditioned_relative(int k) const {
  const double p0 = preconditioned_residual_norm.front();
  if (p0 == 0.0) return 0.0;
  return preconditioned_residual_norm[static_cast<std::size_t>(k)] / p0;
}

std::optional<double> GmresHistory::true_relative(int k) const {
  const auto& t0 = true_residual_norm.front();
  const auto& tk = true_residual_norm[static_cast<std::size_t>(k)];
  if (!t0 || !tk) return std::nullopt;
  if (*t0 == 0.0) return 0.0;
  return *tk / *t0;
}

PreconditionerPair preconditioner_for_mode(PrecondMode mode,
                                           const LinearOperator& h) {
  const LinearOperator id = LinearOperator::identity(h.dim());
  switch (mode) {
    case PrecondMode::Left:
      return {h, id};
    case PrecondMode::Right:
      return {id, h};
    case PrecondMode::NoPrecond:
      return {id, id};
    case PrecondMode::Split:
      throw domain_error(
          "preconditioner_for_mode: split placement needs an explicit pair");
  }
  throw domain_error("preconditioner_for_mode: unknown mode");
}

double true_residual_norm(const LinearOperator& a, const Vector& b,
                          const Vector& x) {
  if (a.dim() != b.dim() || a.dim() != x.dim())
    throw dimension_error("true_residual_norm: dimension mismatch");
  return norm2(b - a.apply(x));
}

GmresResult gmres_solve(const LinearOperator& a, const Vector& b,
                        const Vector& x0, const LinearOperator& h,
                        const GmresConfig& config) {
  return gmres_solve(a, b, x0, preconditioner_for_mode(config.mode, h),
                     config);
}

GmresResult gmres_solve(const LinearOperator& a, const Vector& b,
                        const Vector& x0, const PreconditionerPair& precond,
                        const GmresConfig& config) {
  validate_config(config);
  const int n = a.dim();
  if (b.dim() != n || x0.dim() != n || precond.left.dim() != n ||
      precond.right.dim() != n)
    throw dimension_error("gmres_solve: dimension mismatch");
  if (config.weight_cholesky && config.weight_cholesky->rows() != n)
    throw dimension_error("gmres_solve: weight dimension mismatch");

  const InnerProduct ip(config.weight_cholesky);

  GmresResult result{x0, {}, GmresStatus::MaxIterations, 0, {}};
  GmresHistory& history = result.history;

  const Vector r0 = b - a.apply(x0);
  Vector z0 = precond.left.apply(r0);
  Vector fz0 = ip.map(z0);
  const double beta = norm2(fz0);
  if (!std::isfinite(beta))
    throw numerical_error("gmres_solve: non-finite initial residual");

  history.preconditioned_residual_norm.push_back(beta);
  history.true_residual_norm.push_back(norm2(r0));
  if (config.store_iterates) history.iterates.push_back(x0);

  if (beta == 0.0) {
    result.status = GmresStatus::ConvergedPreconditioned;
    return result;
  }

  std::vector<Vector> basis{(1.0 / beta) * z0};
  std::vector<Vector> mapped_basis;  // F v_i, maintained when weighted
  if (ip.weighted()) mapped_basis.push_back((1.0 / beta) * fz0);

  std::vector<std::vector<double>> hess;  // rotated columns of the Hessenberg
  std::vector<double> cs, sn;
  std::vector<double> g{beta};

  // Least-squares iterate from the first k rotated columns.
  auto form_iterate = [&](int k) {
    std::vector<double> y(static_cast<std::size_t>(k));
    for (int i = k - 1; i >= 0; --i) {
      double s = g[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j)
        s -= hess[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] *
             y[static_cast<std::size_t>(j)];
      const double diag =
          hess[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
      y[static_cast<std::size_t>(i)] = (diag != 0.0) ? s / diag : 0.0;
    }
    Vector correction(n);
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < n; ++i)
        correction[i] += y[static_cast<std::size_t>(j)] *
                         basis[static_cast<std::size_t>(j)][i];
    return x0 + precond.right.apply(correction);
  };

  for (int k = 1; k <= config.max_iter; ++k) {
    Vector w = precond.left.apply(a.apply(precond.right.apply(basis.back())));
    Vector fw = ip.map(w);
    const double wnorm0 = norm2(fw);
    if (!std::isfinite(wnorm0))
      throw numerical_error("gmres_solve: non-finite value at iteration " +
                            std::to_string(k));

    std::vector<double> column(static_cast<std::size_t>(k) + 1, 0.0);
    const int passes = config.reorthogonalize ? 2 : 1;
    for (int pass = 0; pass < passes; ++pass) {
      for (int i = 0; i < k; ++i) {
        const double hi =
            ip.weighted()
                ? dot(mapped_basis[static_cast<std::size_t>(i)], fw)
                : dot(basis[static_cast<std::size_t>(i)], w);
        column[static_cast<std::size_t>(i)] += hi;
        for (int r = 0; r < n; ++r)
          w[r] -= hi * basis[static_cast<std::size_t>(i)][r];
        if (ip.weighted())
          for (int r = 0; r < n; ++r)
            fw[r] -= hi * mapped_basis[static_cast<std::size_t>(i)][r];
      }
    }
    const double hsub = ip.weighted() ? norm2(fw) : norm2(w);
    if (!std::isfinite(hsub))
      throw numerical_error("gmres_solve: non-finite value at iteration " +
                            std::to_string(k));
    const bool happy = hsub <= config.breakdown_tol * wnorm0;
    column[static_cast<std::size_t>(k)] = happy ? 0.0 : hsub;

    // previously computed rotations
    for (int i = 0; i + 1 < k; ++i) {
      const double t1 = column[static_cast<std::size_t>(i)];
      const double t2 = column[static_cast<std::size_t>(i) + 1];
      column[static_cast<std::size_t>(i)] =
          cs[static_cast<std::size_t>(i)] * t1 +
          sn[static_cast<std::size_t>(i)] * t2;
      column[static_cast<std::size_t>(i) + 1] =
          -sn[static_cast<std::size_t>(i)] * t1 +
          cs[static_cast<std::size_t>(i)] * t2;
    }
    // new rotation eliminating the subdiagonal entry
    {
      const double aa = column[static_cast<std::size_t>(k) - 1];
      const double bb = column[static_cast<std::size_t>(k)];
      const double d = std::hypot(aa, bb);
      double c = 1.0, s = 0.0;
      if (d > 0.0) {
        c = aa / d;
        s = bb / d;
      }
      cs.push_back(c);
      sn.push_back(s);
      column[static_cast<std::size_t>(k) - 1] = d;
      column[static_cast<std::size_t>(k)] = 0.0;
      const double g_old = g.back();
      g.back() = c * g_old;
      g.push_back(-s * g_old);
    }
    hess.push_back(std::move(column));
    if (!happy) {
      basis.push_back((1.0 / hsub) * w);
      if (ip.weighted()) mapped_basis.push_back((1.0 / hsub) * fw);
    }

    const double rho = std::fabs(g.back());
    history.preconditioned_residual_norm.push_back(rho);
    result.iterations = k;

    const double rel_precond = rho / beta;
    const bool precond_hit = rel_precond <= config.rtol_preconditioned;
    const bool scheduled_sample = (k % config.true_residual_stride) == 0;
    const bool at_max = (k == config.max_iter);

    // Does this iteration need the explicit iterate?
    bool terminating = happy || at_max || (!config.rtol_true && precond_hit);
    const bool probe_true =
        scheduled_sample || terminating ||
        (config.rtol_true && precond_hit) || config.store_iterates;

    std::optional<double> true_norm;
    Vector xk = result.x;
    if (probe_true) {
      xk = form_iterate(k);
      true_norm = true_residual_norm(a, b, xk);
      const double t0 = *history.true_residual_norm.front();
      if (config.rtol_true && t0 > 0.0 && *true_norm / t0 <= *config.rtol_true)
        terminating = true;
    }
    const bool dual_check = config.rtol_true.has_value() && precond_hit;
    history.true_residual_norm.push_back(
        (scheduled_sample || terminating || dual_check) ? true_norm
                                                        : std::nullopt);
    if (config.store_iterates) history.iterates.push_back(xk);

    if (terminating) {
      result.x = xk;
      const double t0 = *history.true_residual_norm.front();
      const bool true_hit = config.rtol_true && true_norm && t0 > 0.0 &&
                            *true_norm / t0 <= *config.rtol_true;
      if (true_hit)
        result.status = GmresStatus::ConvergedTrue;
      else if (precond_hit && !config.rtol_true)
        result.status = GmresStatus::ConvergedPreconditioned;
      else if (happy)
        result.status = GmresStatus::HappyBreakdown;
      else
        result.status = GmresStatus::MaxIterations;
      break;
    }
  }

  if (config.store_basis) result.basis = basis;
  return result;
}

StoppingReport stopping_report(const GmresHistory& h, double rtol) {
  if (!(rtol > 0.0 && rtol < 1.0))
    throw domain_error("stopping_report: rtol must be in (0,1)");
  bool any_sampled = false;
  for (const auto& t : h.true_residual_norm)
    if (t) any_sampled = true;
  if (!any_sampled)
    throw contract_error("stopping_report: no sampled true residuals");

  StoppingReport report;
  const int count = static_cast<int>(h.preconditioned_residual_norm.size());
  for (int k = 0; k < count; ++k) {
    if (!report.k_preconditioned && h.preconditioned_relative(k) <= rtol)
      report.k_preconditioned = k;
    const auto t = h.true_relative(k);
    if (!report.k_true && t && *t <= rtol) report.k_true = k;
  }

  const long long kp =
      report.k_preconditioned ? *report.k_preconditioned : count;
  const long long kt = report.k_true ? *report.k_true : count;
  if (kp < kt)
    report.verdict = StoppingVerdict::Premature;
  else if (kp > kt)
    report.verdict = StoppingVerdict::Delayed;
  else
    report.verdict = StoppingVerdict::Aligned;
  return report;
}

LeftRightResult run_left_right_pair(const LinearOperator& a, const Vector& b,
                                    const Vector& x0, const LinearOperator& h,
                                    GmresConfig config) {
  config.true_residual_stride = 1;
  GmresConfig left_config = config;
  left_config.mode = PrecondMode::Left;
  GmresConfig right_config = config;
  right_config.mode = PrecondMode::Right;
  return {gmres_solve(a, b, x0, h, left_config),
          gmres_solve(a, b, x0, h, right_config)};
}

}  // namespace gmreslab
