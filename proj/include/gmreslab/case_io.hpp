#ifndef GMRESLAB_CASE_IO_HPP
#define GMRESLAB_CASE_IO_HPP

#include <string>

#include "gmreslab/generators.hpp"
#include "gmreslab/matrix.hpp"

namespace gmreslab {

/// A case directory read back from disk: dense matrices from A.mtx / H.mtx,
/// the right-hand side from b.mtx and metadata from case.json.
struct LoadedCase {
  Matrix a;
  Matrix h;
  Vector b;
  Vector eigenvalues;
  CaseMetadata meta;
};

/// Writes A.mtx, H.mtx, b.mtx and case.json into `dir` (created on demand).
void write_case_dir(const std::string& dir, const GeneratedCase& c);

LoadedCase read_case_dir(const std::string& dir);

}  // namespace gmreslab

#endif
