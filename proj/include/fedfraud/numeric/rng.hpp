#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "fedfraud/numeric/matrix.hpp"

namespace fedfraud {

/// Seedable generator with deterministic stream splitting.
///
/// A child stream is keyed by (parent seed, label) only, never by how many
/// draws the parent has made, so work that splits per client or per round
/// produces the same numbers regardless of scheduling. Instances are
/// single-owner; hand each worker its own split instead of sharing one.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }

  Rng split(std::uint64_t label) const;
  Rng split(std::string_view label) const;

  /// Uniform draw in [0, 1).
  double uniform();
  /// Uniform draw in [lo, hi); requires lo < hi.
  double uniform(double lo, double hi);
  /// Uniform integer in [0, n); requires n > 0.
  std::size_t index(std::size_t n);
  double normal(double mean = 0.0, double stddev = 1.0);
  double gamma(double shape);
  bool bernoulli(double p);

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Matrix of independent uniform(lo, hi) draws.
Matrix rng_uniform(Rng& rng, double lo, double hi, std::size_t rows, std::size_t cols);

/// Uniformly random permutation of 0..n-1 (Fisher-Yates).
std::vector<std::size_t> rng_shuffle(Rng& rng, std::size_t n);

/// In-place Fisher-Yates shuffle.
void shuffle_in_place(Rng& rng, std::span<std::size_t> items);

/// One draw from a symmetric Dirichlet(alpha) over `k` categories.
std::vector<double> rng_dirichlet(Rng& rng, std::size_t k, double alpha);

std::uint64_t mix_seed(std::uint64_t x) noexcept;

}  // namespace fedfraud
