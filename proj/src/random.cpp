#include "roal/random.hpp"

#include <cmath>
#include <numbers>

namespace roal {

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double th = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(th);
  has_spare_ = true;
  return r * std::cos(th);
}

std::uint64_t stable_hash(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view label, std::uint64_t index) {
  std::uint64_t h = stable_hash(label) ^ (seed * 0x9E3779B97F4A7C15ULL) ^ (index * 0xC2B2AE3D27D4EB4FULL);
  // splitmix64 finalizer
  h += 0x9E3779B97F4A7C15ULL;
  h = (h ^ (h >> 30)) * 0xBF58476D1CE4E5B9ULL;
  h = (h ^ (h >> 27)) * 0x94D049BB133111EBULL;
  return h ^ (h >> 31);
}

RealMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  RealMatrix m(rows, cols);
  for (double& v : m.entries()) v = rng.normal();
  return m;
}

RealMatrix random_symmetric(std::size_t n, Rng& rng) { return sym_part(gaussian_matrix(n, rng)); }

RealMatrix random_antisymmetric(std::size_t n, Rng& rng) { return skew_part(gaussian_matrix(n, rng)); }

RealMatrix random_orthogonal(std::size_t n, Rng& rng) {
  return polar_factor(gaussian_matrix(n, rng));
}

RealMatrix random_psd(std::size_t n, Rng& rng, std::size_t rank) {
  const RealMatrix g = gaussian_matrix(n, rank == 0 ? n : rank, rng);
  return g * adjoint(g);
}

RealMatrix random_with_norm(std::size_t n, double norm, Rng& rng) {
  RealMatrix m = gaussian_matrix(n, rng);
  const double s = operator_norm(m);
  return s > 0.0 ? m * (norm / s) : m;
}

}  // namespace roal
