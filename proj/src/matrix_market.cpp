#include "gmreslab/matrix_market.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "gmreslab/errors.hpp"

namespace gmreslab {

namespace {

std::string format_full(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

struct LineReader {
  std::istream& in;
  long line_no = 0;

  // next non-comment, non-blank line; false at end of file
  bool next(std::string& out) {
    while (std::getline(in, out)) {
      ++line_no;
      strip_cr(out);
      std::size_t i = 0;
      while (i < out.size() &&
             std::isspace(static_cast<unsigned char>(out[i])))
        ++i;
      if (i == out.size()) continue;
      if (out[i] == '%') continue;
      return true;
    }
    return false;
  }
};

double parse_real(const std::string& token, long line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    throw parse_error("matrix market: expected a real number, got '" + token +
                          "'",
                      line);
  }
  if (used != token.size())
    throw parse_error("matrix market: trailing characters in '" + token + "'",
                      line);
  if (!std::isfinite(v))
    throw parse_error("matrix market: non-finite value", line);
  return v;
}

}  // namespace

void write_matrix_market(const std::string& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "%%MatrixMarket matrix array real general\n";
  out << m.rows() << " " << m.cols() << "\n";
  // array format lists entries in column-major order
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < m.rows(); ++i) out << format_full(m(i, j)) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_matrix_market(const std::string& path, const Vector& v) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "%%MatrixMarket matrix array real general\n";
  out << v.dim() << " 1\n";
  for (int i = 0; i < v.dim(); ++i) out << format_full(v[i]) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

Matrix read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  LineReader reader{in};

  std::string header;
  if (!std::getline(in, header))
    throw parse_error("matrix market: empty file", 1);
  strip_cr(header);
  reader.line_no = 1;
  std::istringstream hs(header);
  std::string banner, object, format, field, symmetry;
  hs >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || lower(object) != "matrix")
    throw parse_error("matrix market: bad header banner", 1);
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (field != "real")
    throw parse_error("matrix market: only the real field is supported", 1);
  if (symmetry != "general")
    throw parse_error("matrix market: only general symmetry is supported", 1);
  if (format != "array" && format != "coordinate")
    throw parse_error("matrix market: unknown format '" + format + "'", 1);

  std::string line;
  if (!reader.next(line))
    throw parse_error("matrix market: missing size line", reader.line_no);
  std::istringstream sizes(line);
  long rows = 0, cols = 0, nnz = 0;
  if (format == "array") {
    if (!(sizes >> rows >> cols) || rows <= 0 || cols <= 0)
      throw parse_error("matrix market: bad array dimensions", reader.line_no);
  } else {
    if (!(sizes >> rows >> cols >> nnz) || rows <= 0 || cols <= 0 || nnz < 0)
      throw parse_error("matrix market: bad coordinate dimensions",
                        reader.line_no);
  }

  Matrix m(static_cast<int>(rows), static_cast<int>(cols));
  if (format == "array") {
    const long total = rows * cols;
    long index = 0;
    std::string token;
    while (index < total) {
      if (!reader.next(line))
        throw parse_error("matrix market: expected " + std::to_string(total) +
                              " entries, found " + std::to_string(index),
                          reader.line_no);
      std::istringstream values(line);
      while (values >> token) {
        if (index >= total)
          throw parse_error("matrix market: too many entries", reader.line_no);
        const double v = parse_real(token, reader.line_no);
        m(static_cast<int>(index % rows), static_cast<int>(index / rows)) = v;
        ++index;
      }
    }
    if (reader.next(line))
      throw parse_error("matrix market: too many entries", reader.line_no);
  } else {
    for (long entry = 0; entry < nnz; ++entry) {
      if (!reader.next(line))
        throw parse_error("matrix market: expected " + std::to_string(nnz) +
                              " coordinate entries",
                          reader.line_no);
      std::istringstream values(line);
      long i = 0, j = 0;
      std::string token;
      if (!(values >> i >> j >> token))
        throw parse_error("matrix market: bad coordinate entry",
                          reader.line_no);
      if (i < 1 || i > rows || j < 1 || j > cols)
        throw parse_error("matrix market: coordinate out of range",
                          reader.line_no);
      m(static_cast<int>(i - 1), static_cast<int>(j - 1)) =
          parse_real(token, reader.line_no);
    }
    if (reader.next(line))
      throw parse_error("matrix market: too many entries", reader.line_no);
  }
  return m;
}

Vector read_matrix_market_vector(const std::string& path) {
  const Matrix m = read_matrix_market(path);
  if (m.cols() != 1)
    throw parse_error("matrix market: expected a single-column vector in " +
                          path,
                      2);
  Vector v(m.rows());
  for (int i = 0; i < m.rows(); ++i) v[i] = m(i, 0);
  return v;
}

}  // namespace gmreslab
