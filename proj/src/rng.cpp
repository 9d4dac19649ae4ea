#include "gmreslab/rng.hpp"

#include <cmath>

namespace gmreslab {

double NormalSampler::uniform_open() {
  // 53 random bits mapped to (0, 1].
  const std::uint64_t bits = engine_() >> 11;
  return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
}

double NormalSampler::next() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = uniform_open();
  const double u2 = uniform_open();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Vector random_normal_vector(int n, std::uint64_t seed) {
  NormalSampler sampler(seed);
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = sampler.next();
  return v;
}

}  // namespace gmreslab
