#include "gmreslab/factorizations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gmreslab/errors.hpp"

namespace gmreslab {

namespace {

void require_square(const Matrix& m, const char* who) {
  if (m.rows() != m.cols())
    throw dimension_error(std::string(who) + ": matrix must be square");
}

void require_finite_input(const Matrix& m, const char* who) {
  if (!all_finite(m))
    throw domain_error(std::string(who) + ": non-finite input");
}

void require_symmetric(const Matrix& m, const char* who) {
  require_square(m, who);
  const double scale = max_abs(m);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = i + 1; j < m.cols(); ++j)
      if (std::fabs(m(i, j) - m(j, i)) > 1e-12 * scale)
        throw contract_error(std::string(who) + ": matrix is not symmetric");
}

}  // namespace

LuFactorization lu_factor(const Matrix& m) {
  require_square(m, "lu_factor");
  require_finite_input(m, "lu_factor");
  const int n = m.rows();
  const double pivot_floor = 1e-14 * max_abs(m);

  LuFactorization f;
  f.lu_ = m;
  f.perm_.resize(n);
  std::iota(f.perm_.begin(), f.perm_.end(), 0);
  Matrix& a = f.lu_;

  for (int k = 0; k < n; ++k) {
    int pivot_row = k;
    double pivot_mag = std::fabs(a(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double mag = std::fabs(a(i, k));
      if (mag > pivot_mag) {
        pivot_mag = mag;
        pivot_row = i;
      }
    }
    if (pivot_mag < pivot_floor || pivot_mag == 0.0)
      throw singular_error("lu_factor: pivot below singularity threshold");
    if (pivot_row != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(pivot_row, j));
      std::swap(f.perm_[k], f.perm_[pivot_row]);
      f.perm_sign_ = -f.perm_sign_;
    }
    const double pivot = a(k, k);
    for (int i = k + 1; i < n; ++i) {
      const double factor = a(i, k) / pivot;
      a(i, k) = factor;
      for (int j = k + 1; j < n; ++j) a(i, j) -= factor * a(k, j);
    }
  }
  return f;
}

Vector LuFactorization::solve(const Vector& b) const {
  const int n = dim();
  if (b.dim() != n) throw dimension_error("lu_solve: size mismatch");
  Vector x(n);
  // forward substitution on P*b with unit lower factor
  for (int i = 0; i < n; ++i) {
    double s = b[perm_[i]];
    for (int j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
    x[i] = s;
  }
  // back substitution with U
  for (int i = n - 1; i >= 0; --i) {
    double s = x[i];
    for (int j = i + 1; j < n; ++j) s -= lu_(i, j) * x[j];
    x[i] = s / lu_(i, i);
  }
  return x;
}

Matrix LuFactorization::reconstruct_permuted() const {
  const int n = dim();
  Matrix pa(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      const int upper = std::min(i, j);
      for (int k = 0; k <= upper; ++k) {
        const double l_ik = (k == i) ? 1.0 : lu_(i, k);
        s += l_ik * lu_(k, j);
      }
      pa(i, j) = s;
    }
  return pa;
}

double LuFactorization::determinant() const {
  double d = perm_sign_;
  for (int i = 0; i < dim(); ++i) d *= lu_(i, i);
  return d;
}

Vector lu_solve(const LuFactorization& f, const Vector& b) { return f.solve(b); }

Matrix cholesky(const Matrix& m) {
  require_symmetric(m, "cholesky");
  require_finite_input(m, "cholesky");
  const int n = m.rows();
  Matrix l(n, n);
  for (int j = 0; j < n; ++j) {
    double d = m(j, j);
    for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (d <= 0.0)
      throw definiteness_error("cholesky: non-positive pivot");
    l(j, j) = std::sqrt(d);
    for (int i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

QrResult qr_orthonormal(const Matrix& m) {
  require_square(m, "qr_orthonormal");
  require_finite_input(m, "qr_orthonormal");
  const int n = m.rows();
  Matrix r = m;
  Matrix q = Matrix::identity(n);
  std::vector<double> v(static_cast<std::size_t>(n));

  for (int k = 0; k < n - 1; ++k) {
    double norm_x = 0.0;
    for (int i = k; i < n; ++i) norm_x += r(i, k) * r(i, k);
    norm_x = std::sqrt(norm_x);
    if (norm_x == 0.0) continue;  // column already zero; rank check below

    const double alpha = (r(k, k) > 0.0) ? -norm_x : norm_x;
    double vtv = 0.0;
    for (int i = k; i < n; ++i) {
      v[static_cast<std::size_t>(i)] = r(i, k);
    }
    v[static_cast<std::size_t>(k)] -= alpha;
    for (int i = k; i < n; ++i)
      vtv += v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
    if (vtv == 0.0) continue;
    const double beta = 2.0 / vtv;

    // R <- P_k R on the trailing block
    for (int j = k; j < n; ++j) {
      double s = 0.0;
      for (int i = k; i < n; ++i) s += v[static_cast<std::size_t>(i)] * r(i, j);
      s *= beta;
      for (int i = k; i < n; ++i) r(i, j) -= s * v[static_cast<std::size_t>(i)];
    }
    // Q <- Q P_k (accumulates P_0 P_1 ... in order)
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = k; j < n; ++j) s += q(i, j) * v[static_cast<std::size_t>(j)];
      s *= beta;
      for (int j = k; j < n; ++j) q(i, j) -= s * v[static_cast<std::size_t>(j)];
    }
  }

  double diag_scale = 0.0;
  for (int i = 0; i < n; ++i) diag_scale = std::max(diag_scale, std::fabs(r(i, i)));
  if (diag_scale == 0.0)
    throw factorization_error("qr_orthonormal: rank-deficient input");
  for (int i = 0; i < n; ++i) {
    if (std::fabs(r(i, i)) < 1e-13 * diag_scale)
      throw factorization_error("qr_orthonormal: rank-deficient input");
    if (r(i, i) < 0.0) {
      for (int j = 0; j < n; ++j) {
        r(i, j) = -r(i, j);
        q(j, i) = -q(j, i);
      }
    }
  }
  // clear sub-diagonal rounding debris
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < i; ++j) r(i, j) = 0.0;
  return {std::move(q), std::move(r)};
}

SymEigResult jacobi_sym_eig(const Matrix& m) {
  require_symmetric(m, "jacobi_sym_eig");
  require_finite_input(m, "jacobi_sym_eig");
  const int n = m.rows();
  Matrix a = m;
  Matrix v = Matrix::identity(n);
  const double threshold = 1e-12 * frobenius_norm(m);

  auto off_norm = [&]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  const int max_sweeps = 100;
  for (int sweep = 0; sweep < max_sweeps && off_norm() > threshold; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = ((theta >= 0.0) ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int i = 0; i < n; ++i) {
          const double aip = a(i, p);
          const double aiq = a(i, q);
          a(i, p) = c * aip - s * aiq;
          a(i, q) = s * aip + c * aiq;
        }
        for (int j = 0; j < n; ++j) {
          const double apj = a(p, j);
          const double aqj = a(q, j);
          a(p, j) = c * apj - s * aqj;
          a(q, j) = s * apj + c * aqj;
        }
        for (int i = 0; i < n; ++i) {
          const double vip = v(i, p);
          const double viq = v(i, q);
          v(i, p) = c * vip - s * viq;
          v(i, q) = s * vip + c * viq;
        }
      }
    }
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a(i, i) < a(j, j); });

  SymEigResult result;
  result.eigenvalues = Vector(n);
  result.eigenvectors = Matrix(n, n);
  for (int j = 0; j < n; ++j) {
    result.eigenvalues[j] = a(order[static_cast<std::size_t>(j)],
                              order[static_cast<std::size_t>(j)]);
    for (int i = 0; i < n; ++i)
      result.eigenvectors(i, j) = v(i, order[static_cast<std::size_t>(j)]);
  }
  return result;
}

SvdResult svd(const Matrix& m) {
  require_finite_input(m, "svd");
  if (m.rows() < m.cols()) {
    SvdResult t = svd(transpose(m));
    return {std::move(t.singular_values), std::move(t.v), std::move(t.u)};
  }
  const int rows = m.rows();
  const int cols = m.cols();
  Matrix u = m;
  Matrix v = Matrix::identity(cols);

  const double tol = 1e-15;
  const int max_sweeps = 60;
  bool rotated = true;
  for (int sweep = 0; sweep < max_sweeps && rotated; ++sweep) {
    rotated = false;
    for (int p = 0; p < cols - 1; ++p) {
      for (int q = p + 1; q < cols; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (int i = 0; i < rows; ++i) {
          alpha += u(i, p) * u(i, p);
          beta += u(i, q) * u(i, q);
          gamma += u(i, p) * u(i, q);
        }
        if (alpha == 0.0 || beta == 0.0) continue;
        if (std::fabs(gamma) <= tol * std::sqrt(alpha * beta)) continue;
        rotated = true;

        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = ((zeta >= 0.0) ? 1.0 : -1.0) /
                         (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (int i = 0; i < rows; ++i) {
          const double uip = u(i, p);
          const double uiq = u(i, q);
          u(i, p) = c * uip - s * uiq;
          u(i, q) = s * uip + c * uiq;
        }
        for (int i = 0; i < cols; ++i) {
          const double vip = v(i, p);
          const double viq = v(i, q);
          v(i, p) = c * vip - s * viq;
          v(i, q) = s * vip + c * viq;
        }
      }
    }
  }

  std::vector<double> sigma(static_cast<std::size_t>(cols));
  for (int j = 0; j < cols; ++j) {
    double s = 0.0;
    for (int i = 0; i < rows; ++i) s += u(i, j) * u(i, j);
    sigma[static_cast<std::size_t>(j)] = std::sqrt(s);
  }

  std::vector<int> order(static_cast<std::size_t>(cols));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    return sigma[static_cast<std::size_t>(i)] > sigma[static_cast<std::size_t>(j)];
  });

  SvdResult result;
  result.singular_values.resize(static_cast<std::size_t>(cols));
  result.u = Matrix(rows, cols);
  result.v = Matrix(cols, cols);
  for (int j = 0; j < cols; ++j) {
    const int src = order[static_cast<std::size_t>(j)];
    const double s = sigma[static_cast<std::size_t>(src)];
    result.singular_values[static_cast<std::size_t>(j)] = s;
    for (int i = 0; i < rows; ++i)
      result.u(i, j) = (s > 0.0) ? u(i, src) / s : (i == j ? 1.0 : 0.0);
    for (int i = 0; i < cols; ++i) result.v(i, j) = v(i, src);
  }
  return result;
}

double cond2(const Matrix& m) {
  require_square(m, "cond2");
  const SvdResult s = svd(m);
  const double smax = s.singular_values.front();
  const double smin = s.singular_values.back();
  if (smax == 0.0 || smin < 1e-15 * smax)
    return std::numeric_limits<double>::infinity();
  return smax / smin;
}

}  // namespace gmreslab
