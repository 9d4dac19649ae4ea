#ifndef GMRESLAB_MATRIX_HPP
#define GMRESLAB_MATRIX_HPP

#include <vector>

namespace gmreslab {

/// Dense real vector. Entries are validated to be finite when the vector is
/// constructed from user-supplied data.
class Vector {
 public:
  Vector() = default;
  explicit Vector(int dim);                         // zero-initialized
  Vector(std::vector<double> entries);              // validates finiteness

  int dim() const { return static_cast<int>(data_.size()); }
  double& operator[](int i) { return data_[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return data_[static_cast<std::size_t>(i)]; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

 private:
  std::vector<double> data_;
};

/// Dense real matrix, row-major storage. Entries are validated to be finite
/// when the matrix is constructed from user-supplied data.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols);                       // zero-initialized
  Matrix(int rows, int cols, std::vector<double> entries);  // validates

  static Matrix identity(int n);
  static Matrix diagonal(const Vector& d);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }
  double operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }

  const std::vector<double>& data() const { return data_; }

  Vector col(int j) const;
  void set_col(int j, const Vector& v);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// Elementwise arithmetic. Shapes must agree.
Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(double s, const Vector& v);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& m);

/// Dense matrix-vector product.
Vector mat_vec(const Matrix& m, const Vector& x);

/// Dense matrix-matrix product.
Matrix mat_mul(const Matrix& a, const Matrix& b);

Matrix transpose(const Matrix& m);

double dot(const Vector& a, const Vector& b);
double norm2(const Vector& v);
double max_abs(const Vector& v);
double max_abs(const Matrix& m);
double frobenius_norm(const Matrix& m);

bool all_finite(const Vector& v);
bool all_finite(const Matrix& m);

}  // namespace gmreslab

#endif
