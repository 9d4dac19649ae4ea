#ifndef GMRESLAB_RNG_HPP
#define GMRESLAB_RNG_HPP

#include <cstdint>
#include <random>

#include "gmreslab/matrix.hpp"

namespace gmreslab {

/// Deterministic standard-normal stream (Box-Muller over mt19937_64).
/// mt19937_64 is fully specified by the standard, so a given seed produces
/// the same stream on every platform.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}

  double next();

 private:
  double uniform_open();  // in (0, 1]

  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

Vector random_normal_vector(int n, std::uint64_t seed);

}  // namespace gmreslab

#endif
