// Seeded random sources. Distributions are implemented on top of the raw
// mt19937_64 stream so a seed reproduces the same values on every standard
// library.
#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "roal/matrix.hpp"

namespace roal {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * n) % n; }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Stable 64-bit FNV-1a hash, used to derive per-scenario seed streams.
std::uint64_t stable_hash(std::string_view s);
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label, std::uint64_t index = 0);

RealMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng);
inline RealMatrix gaussian_matrix(std::size_t n, Rng& rng) { return gaussian_matrix(n, n, rng); }
RealMatrix random_symmetric(std::size_t n, Rng& rng);
RealMatrix random_antisymmetric(std::size_t n, Rng& rng);
RealMatrix random_orthogonal(std::size_t n, Rng& rng);
/// G Gᵀ with G of shape n×rank (rank = n when 0).
RealMatrix random_psd(std::size_t n, Rng& rng, std::size_t rank = 0);
/// Random matrix with operator norm exactly `norm`.
RealMatrix random_with_norm(std::size_t n, double norm, Rng& rng);

}  // namespace roal
