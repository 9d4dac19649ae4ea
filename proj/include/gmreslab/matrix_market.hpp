#ifndef GMRESLAB_MATRIX_MARKET_HPP
#define GMRESLAB_MATRIX_MARKET_HPP

#include <string>

#include "gmreslab/matrix.hpp"

namespace gmreslab {

/// Writes dense `array real general` format with 17 significant digits so
/// that a read-back reproduces every entry bit for bit.
void write_matrix_market(const std::string& path, const Matrix& m);
void write_matrix_market(const std::string& path, const Vector& v);

/// Reads `array` or `coordinate` real general files into a dense matrix.
/// Malformed input raises parse_error carrying the line number.
Matrix read_matrix_market(const std::string& path);

/// Reads a one-column matrix as a vector.
Vector read_matrix_market_vector(const std::string& path);

}  // namespace gmreslab

#endif
