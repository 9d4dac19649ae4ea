#include "gmreslab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "gmreslab/errors.hpp"

namespace gmreslab {

namespace {

constexpr double kSandwichFloorScale = 1e-13;

SandwichReport build_sandwich(const std::vector<double>& lower,
                              const std::vector<double>& middle,
                              double kappa) {
  SandwichReport report;
  report.kappa = kappa;
  report.lower = lower;
  report.middle = middle;
  report.max_violation_lower = -std::numeric_limits<double>::infinity();
  report.max_violation_upper = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < lower.size(); ++k) {
    const double bound = kappa * lower[k];
    report.upper_bound.push_back(bound);
    if (middle[k] > 0.0)
      report.max_violation_lower = std::max(
          report.max_violation_lower, (lower[k] - middle[k]) / middle[k]);
    if (bound > 0.0)
      report.max_violation_upper =
          std::max(report.max_violation_upper, (middle[k] - bound) / bound);
  }
  return report;
}

}  // namespace

bool SandwichReport::holds(double rel_slack) const {
  // Absolute floor under the relative slack: recomputed residuals are only
  // meaningful down to the attainable-accuracy level, which scales with
  // kappa(H) once the preconditioner is ill-conditioned.
  const double noise =
      std::max(kSandwichFloorScale,
               std::numeric_limits<double>::epsilon() * kappa);
  const double floor_lo = noise * (middle.empty() ? 0.0 : middle.front());
  const double floor_hi =
      noise * std::max(middle.empty() ? 0.0 : middle.front(),
                       upper_bound.empty() ? 0.0 : upper_bound.front());
  for (std::size_t k = 0; k < lower.size(); ++k) {
    if (lower[k] > middle[k] * (1.0 + rel_slack) + floor_lo) return false;
    if (middle[k] > upper_bound[k] * (1.0 + rel_slack) + floor_hi) return false;
  }
  return true;
}

SandwichReport sandwich_check(const LeftRightResult& pair,
                              const LinearOperator& h) {
  const GmresHistory& left = pair.left.history;
  const GmresHistory& right = pair.right.history;
  const std::size_t count = std::min(left.true_residual_norm.size(),
                                     right.true_residual_norm.size());
  std::vector<double> lower, middle;
  for (std::size_t k = 0; k < count; ++k) {
    if (!right.true_residual_norm[k] || !left.true_residual_norm[k])
      throw contract_error("sandwich_check: missing true-residual samples");
    lower.push_back(*right.true_residual_norm[k]);
    middle.push_back(*left.true_residual_norm[k]);
  }
  return build_sandwich(lower, middle, cond2(h.as_dense()));
}

SandwichReport split_sandwich_check(const GmresResult& result_a,
                                    const PreconditionerPair& pair_a,
                                    const GmresResult& result_b,
                                    const PreconditionerPair& pair_b,
                                    const LinearOperator& a, const Vector& b) {
  const Matrix combined_a = pair_a.combined().as_dense();
  const Matrix combined_b = pair_b.combined().as_dense();
  const double scale = frobenius_norm(combined_a);
  if (frobenius_norm(combined_a - combined_b) > 1e-10 * scale)
    throw contract_error(
        "split_sandwich_check: combined preconditioners disagree");
  if (result_a.history.iterates.empty() || result_b.history.iterates.empty())
    throw contract_error("split_sandwich_check: iterates were not stored");

  // G = H~_L * H_L^{-1}, column by column through the LU of H_L.
  const Matrix hl = pair_a.left.as_dense();
  const Matrix hl_tilde = pair_b.left.as_dense();
  const LuFactorization hl_lu = lu_factor(hl);
  const int n = hl.rows();
  Matrix g(n, n);
  Vector e(n);
  for (int j = 0; j < n; ++j) {
    e[j] = 1.0;
    g.set_col(j, mat_vec(hl_tilde, hl_lu.solve(e)));
    e[j] = 0.0;
  }
  const double kappa = cond2(g);

  const std::size_t count = std::min(result_a.history.iterates.size(),
                                     result_b.history.iterates.size());
  std::vector<double> lower, middle;
  for (std::size_t k = 0; k < count; ++k) {
    const Vector ra = b - a.apply(result_a.history.iterates[k]);
    const Vector rb = b - a.apply(result_b.history.iterates[k]);
    lower.push_back(norm2(pair_a.left.apply(ra)));
    middle.push_back(norm2(pair_a.left.apply(rb)));
  }
  return build_sandwich(lower, middle, kappa);
}

double chebyshev_interval_eps(double a, double b, int k) {
  if (!(a > 0.0) || b < a)
    throw domain_error("chebyshev_interval_eps: requires 0 < a <= b");
  if (k < 0) throw domain_error("chebyshev_interval_eps: k must be >= 0");
  if (k == 0) return 1.0;
  if (a == b) return 0.0;  // one-point spectrum, annihilated by 1 - t/a
  const double x = (b + a) / (b - a);
  // T_k(x) = cosh(k acosh(x)) for x > 1, stable for large arguments.
  const double t = std::cosh(static_cast<double>(k) * std::acosh(x));
  return 1.0 / t;
}

MinimaxPolynomial MinimaxPolynomial::chebyshev_form(double t_lo, double t_hi,
                                                    std::vector<double> coeff) {
  MinimaxPolynomial p;
  p.t_lo_ = t_lo;
  p.t_hi_ = t_hi;
  p.coeff_ = std::move(coeff);
  return p;
}

MinimaxPolynomial MinimaxPolynomial::annihilator(std::vector<double> roots) {
  MinimaxPolynomial p;
  p.roots_ = std::move(roots);
  p.product_form_ = true;
  return p;
}

double MinimaxPolynomial::operator()(double t) const {
  if (product_form_) {
    double v = 1.0;
    for (double r : roots_) v *= 1.0 - t / r;
    return v;
  }
  // Clenshaw-free direct recurrence; degrees stay small here.
  const double x = (t_hi_ == t_lo_) ? 0.0
                                    : (2.0 * t - t_lo_ - t_hi_) / (t_hi_ - t_lo_);
  double v = 0.0;
  double tkm1 = 1.0, tk = x;
  for (std::size_t j = 0; j < coeff_.size(); ++j) {
    double basis;
    if (j == 0)
      basis = 1.0;
    else if (j == 1)
      basis = x;
    else {
      basis = 2.0 * x * tk - tkm1;
      tkm1 = tk;
      tk = basis;
    }
    v += coeff_[j] * basis;
  }
  return v;
}

RemezResult remez_discrete_eps(const Vector& eigs, int k) {
  if (k < 0) throw domain_error("remez_discrete_eps: k must be >= 0");
  if (eigs.dim() == 0)
    throw domain_error("remez_discrete_eps: spectrum is empty");
  std::set<double> unique;
  for (int i = 0; i < eigs.dim(); ++i) {
    if (!(eigs[i] > 0.0) || !std::isfinite(eigs[i]))
      throw domain_error("remez_discrete_eps: spectrum must be positive");
    unique.insert(eigs[i]);
  }
  const std::vector<double> pts(unique.begin(), unique.end());
  const int m = static_cast<int>(pts.size());

  RemezResult result;
  if (m <= k) {
    // Degree suffices to interpolate zero at every point.
    result.eps = 0.0;
    result.poly = MinimaxPolynomial::annihilator(pts);
    return result;
  }
  if (k == 0) {
    result.eps = 1.0;
    result.poly = MinimaxPolynomial::chebyshev_form(pts.front(), pts.back(),
                                                    {1.0});
    return result;
  }

  const double t_lo = pts.front();
  const double t_hi = pts.back();
  auto cheb_row = [&](double t, std::vector<double>& row) {
    const double x = (t_hi == t_lo) ? 0.0
                                    : (2.0 * t - t_lo - t_hi) / (t_hi - t_lo);
    row[0] = 1.0;
    if (k >= 1) row[1] = x;
    for (int j = 2; j <= k; ++j)
      row[static_cast<std::size_t>(j)] =
          2.0 * x * row[static_cast<std::size_t>(j) - 1] -
          row[static_cast<std::size_t>(j) - 2];
  };

  // Reference of k+1 spectrum points spread over the sorted set; the
  // constraint point t = 0 completes the (k+2)-square equioscillation system.
  std::vector<int> ref(static_cast<std::size_t>(k) + 1);
  for (int i = 0; i <= k; ++i)
    ref[static_cast<std::size_t>(i)] =
        static_cast<int>(std::llround(static_cast<double>(i) * (m - 1) / k));
  for (std::size_t i = 1; i < ref.size(); ++i)
    if (ref[i] <= ref[i - 1]) ref[i] = ref[i - 1] + 1;

  std::vector<double> coeff;
  double eps_prev = -1.0;
  const int max_exchanges = 100;
  for (int step = 0; step < max_exchanges; ++step) {
    // Solve: sum_j a_j phi_j(0) = 1; sum_j a_j phi_j(x_i) - (-1)^i E = 0.
    const int dim = k + 2;
    Matrix system(dim, dim);
    Vector rhs(dim);
    std::vector<double> row(static_cast<std::size_t>(k) + 1);
    cheb_row(0.0, row);
    for (int j = 0; j <= k; ++j) system(0, j) = row[static_cast<std::size_t>(j)];
    system(0, k + 1) = 0.0;
    rhs[0] = 1.0;
    for (int i = 0; i <= k; ++i) {
      cheb_row(pts[static_cast<std::size_t>(ref[static_cast<std::size_t>(i)])],
               row);
      for (int j = 0; j <= k; ++j)
        system(i + 1, j) = row[static_cast<std::size_t>(j)];
      system(i + 1, k + 1) = (i % 2 == 0) ? -1.0 : 1.0;
      rhs[i + 1] = 0.0;
    }
    Vector solution(dim);
    try {
      solution = lu_factor(system).solve(rhs);
    } catch (const singular_error&) {
      throw numerical_error("remez_discrete_eps: equioscillation system singular");
    }
    coeff.assign(solution.data().begin(), solution.data().end() - 1);
    const double e_signed = solution[k + 1];
    const double eps_cur = std::fabs(e_signed);

    MinimaxPolynomial poly =
        MinimaxPolynomial::chebyshev_form(t_lo, t_hi, coeff);

    // Worst point over the whole spectrum.
    int worst = -1;
    double worst_abs = eps_cur;
    double worst_val = 0.0;
    for (int i = 0; i < m; ++i) {
      const double v = poly(pts[static_cast<std::size_t>(i)]);
      if (std::fabs(v) > worst_abs * (1.0 + 1e-12)) {
        worst_abs = std::fabs(v);
        worst_val = v;
        worst = i;
      }
    }
    result.exchange_steps = step + 1;
    if (worst < 0 ||
        (eps_prev >= 0.0 && std::fabs(eps_cur - eps_prev) <= 1e-12 * eps_cur)) {
      result.eps = eps_cur;
      result.poly = poly;
      return result;
    }
    eps_prev = eps_cur;

    // Single-point exchange keeping the alternation pattern.
    const int sign_worst = (worst_val >= 0.0) ? 1 : -1;
    auto sign_at = [&](std::size_t ref_idx) {
      const double v =
          poly(pts[static_cast<std::size_t>(ref[ref_idx])]);
      return (v >= 0.0) ? 1 : -1;
    };
    if (worst < ref.front()) {
      if (sign_at(0) == sign_worst) {
        ref.front() = worst;
      } else {
        ref.pop_back();
        ref.insert(ref.begin(), worst);
      }
    } else if (worst > ref.back()) {
      if (sign_at(ref.size() - 1) == sign_worst) {
        ref.back() = worst;
      } else {
        ref.erase(ref.begin());
        ref.push_back(worst);
      }
    } else {
      std::size_t pos = 0;
      while (pos + 1 < ref.size() && ref[pos + 1] < worst) ++pos;
      // worst lies strictly between ref[pos] and ref[pos+1]
      if (sign_at(pos) == sign_worst)
        ref[pos] = worst;
      else
        ref[pos + 1] = worst;
    }
  }
  throw numerical_error("remez_discrete_eps: no convergence in 100 exchanges");
}

BoundReport saad_bound_check(const GmresHistory& history, const Vector& eigs,
                             double p_cond) {
  if (eigs.dim() == 0)
    throw domain_error("saad_bound_check: spectrum is empty");
  BoundReport report;
  report.multiplier = p_cond;
  const int count =
      static_cast<int>(history.preconditioned_residual_norm.size());
  double lo = eigs[0], hi = eigs[0];
  for (int i = 0; i < eigs.dim(); ++i) {
    lo = std::min(lo, eigs[i]);
    hi = std::max(hi, eigs[i]);
  }
  for (int k = 0; k < count; ++k) {
    double eps_k;
    if (k == 0) {
      eps_k = 1.0;
    } else {
      try {
        eps_k = remez_discrete_eps(eigs, k).eps;
      } catch (const numerical_error&) {
        eps_k = chebyshev_interval_eps(lo, hi, k);
      }
    }
    const double observed = history.preconditioned_relative(k);
    const bool ok = observed <= eps_k * p_cond + 1e-12;
    report.eps.push_back(eps_k);
    report.observed.push_back(observed);
    report.satisfied.push_back(ok);
    if (!ok) report.all_satisfied = false;
  }
  return report;
}

RangeSupport numerical_range_support(const Matrix& m, int n_angles) {
  if (m.rows() != m.cols())
    throw dimension_error("numerical_range_support: matrix must be square");
  if (!all_finite(m))
    throw domain_error("numerical_range_support: non-finite input");
  if (n_angles < 1)
    throw domain_error("numerical_range_support: n_angles must be >= 1");

  const int n = m.rows();
  const Matrix sym = 0.5 * (m + transpose(m));
  const Matrix skew = 0.5 * (transpose(m) - m);

  RangeSupport result;
  for (int j = 0; j < n_angles; ++j) {
    const double theta = 2.0 * M_PI * j / n_angles;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    // Hermitian part of e^{-i theta} M is c*sym + i*s*skew; embed as a real
    // symmetric 2n x 2n matrix whose spectrum doubles the complex one.
    Matrix embed(2 * n, 2 * n);
    for (int r = 0; r < n; ++r)
      for (int t = 0; t < n; ++t) {
        const double re = c * sym(r, t);
        const double im = s * skew(r, t);
        embed(r, t) = re;
        embed(n + r, n + t) = re;
        embed(r, n + t) = -im;
        embed(n + r, t) = im;
      }
    const SymEigResult eig = jacobi_sym_eig(embed);
    result.angles.push_back(theta);
    result.support.push_back(eig.eigenvalues[2 * n - 1]);
  }
  return result;
}

GapReport entrywise_gap(const Matrix& ha, const Matrix& ah) {
  if (ha.rows() != ha.cols() || ah.rows() != ah.cols() ||
      ha.rows() != ah.rows())
    throw dimension_error("entrywise_gap: square matrices of equal size required");
  const Matrix eye = Matrix::identity(ha.rows());
  GapReport report;
  report.gap_left = max_abs(eye - ha);
  report.gap_right = max_abs(eye - ah);
  report.ratio = (report.gap_left < 1e-300)
                     ? std::numeric_limits<double>::infinity()
                     : report.gap_right / report.gap_left;
  return report;
}

SimilarityReport similarity_check(const Matrix& m1, const Matrix& m2,
                                  int j_max) {
  if (m1.rows() != m1.cols() || m2.rows() != m2.cols() ||
      m1.rows() != m2.rows())
    throw dimension_error("similarity_check: square matrices of equal size required");
  if (j_max < 1 || j_max > 10)
    throw domain_error("similarity_check: j_max must be in 1..10");

  auto trace = [](const Matrix& m) {
    double t = 0.0;
    for (int i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
  };

  SimilarityReport report;
  Matrix p1 = m1, p2 = m2;
  for (int j = 1; j <= j_max; ++j) {
    if (j > 1) {
      p1 = mat_mul(p1, m1);
      p2 = mat_mul(p2, m2);
    }
    const double t1 = trace(p1);
    const double t2 = trace(p2);
    report.trace_m1.push_back(t1);
    report.trace_m2.push_back(t2);
    report.difference.push_back(std::fabs(t1 - t2));
    if (std::fabs(t1 - t2) > 1e-8 * (1.0 + std::fabs(t1)))
      report.within_tolerance = false;
  }
  return report;
}

}  // namespace gmreslab
