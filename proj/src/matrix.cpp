#include "gmreslab/matrix.hpp"

#include <cmath>
#include <utility>

#include "gmreslab/errors.hpp"

namespace gmreslab {

namespace {

void require_finite(const std::vector<double>& entries, const char* what) {
  for (double e : entries)
    if (!std::isfinite(e))
      throw domain_error(std::string(what) + ": non-finite entry");
}

}  // namespace

Vector::Vector(int dim) {
  if (dim <= 0) throw dimension_error("Vector: dim must be positive");
  data_.assign(static_cast<std::size_t>(dim), 0.0);
}

Vector::Vector(std::vector<double> entries) : data_(std::move(entries)) {
  if (data_.empty()) throw dimension_error("Vector: dim must be positive");
  require_finite(data_, "Vector");
}

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows <= 0 || cols <= 0)
    throw dimension_error("Matrix: dimensions must be positive");
  data_.assign(static_cast<std::size_t>(rows) * cols, 0.0);
}

Matrix::Matrix(int rows, int cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows <= 0 || cols <= 0)
    throw dimension_error("Matrix: dimensions must be positive");
  if (data_.size() != static_cast<std::size_t>(rows) * cols)
    throw dimension_error("Matrix: entry count does not match rows*cols");
  require_finite(data_, "Matrix");
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(const Vector& d) {
  Matrix m(d.dim(), d.dim());
  for (int i = 0; i < d.dim(); ++i) m(i, i) = d[i];
  return m;
}

Vector Matrix::col(int j) const {
  Vector v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_col(int j, const Vector& v) {
  if (v.dim() != rows_) throw dimension_error("set_col: length mismatch");
  for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Vector operator+(const Vector& a, const Vector& b) {
  if (a.dim() != b.dim()) throw dimension_error("Vector+: size mismatch");
  Vector r(a.dim());
  for (int i = 0; i < a.dim(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vector operator-(const Vector& a, const Vector& b) {
  if (a.dim() != b.dim()) throw dimension_error("Vector-: size mismatch");
  Vector r(a.dim());
  for (int i = 0; i < a.dim(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vector operator*(double s, const Vector& v) {
  Vector r(v.dim());
  for (int i = 0; i < v.dim(); ++i) r[i] = s * v[i];
  return r;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw dimension_error("Matrix+: shape mismatch");
  Matrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw dimension_error("Matrix-: shape mismatch");
  Matrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

Matrix operator*(double s, const Matrix& m) {
  Matrix r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = s * m(i, j);
  return r;
}

Vector mat_vec(const Matrix& m, const Vector& x) {
  if (m.cols() != x.dim()) throw dimension_error("mat_vec: shape mismatch");
  Vector y(m.rows());
  for (int i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < m.cols(); ++j) s += m(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw dimension_error("mat_mul: shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Matrix transpose(const Matrix& m) {
  Matrix t(m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

double dot(const Vector& a, const Vector& b) {
  if (a.dim() != b.dim()) throw dimension_error("dot: size mismatch");
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Vector& v) { return std::sqrt(dot(v, v)); }

double max_abs(const Vector& v) {
  double m = 0.0;
  for (int i = 0; i < v.dim(); ++i) m = std::max(m, std::fabs(v[i]));
  return m;
}

double max_abs(const Matrix& m) {
  double r = 0.0;
  for (double e : m.data()) r = std::max(r, std::fabs(e));
  return r;
}

double frobenius_norm(const Matrix& m) {
  double s = 0.0;
  for (double e : m.data()) s += e * e;
  return std::sqrt(s);
}

bool all_finite(const Vector& v) {
  for (int i = 0; i < v.dim(); ++i)
    if (!std::isfinite(v[i])) return false;
  return true;
}

bool all_finite(const Matrix& m) {
  for (double e : m.data())
    if (!std::isfinite(e)) return false;
  return true;
}

}  // namespace gmreslab
