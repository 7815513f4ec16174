#include "fedfraud/numeric/rng.hpp"

#include <algorithm>
#include <boost/random/gamma_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <string>
#include <utility>

namespace fedfraud {

// SplitMix64 finalizer.
std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(mix_seed(seed)) {}

Rng Rng::split(std::uint64_t label) const {
  return Rng(mix_seed(seed_ ^ mix_seed(label ^ 0xA5A5A5A5A5A5A5A5ULL)));
}

Rng Rng::split(std::string_view label) const {
  std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return split(h);
}

double Rng::uniform() {
  // Top 53 bits give an exact, platform-independent double in [0, 1).
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  if (!(lo < hi)) {
    throw DomainError("Rng::uniform: requires lo < hi, got [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + ")");
  }
  return lo + (hi - lo) * uniform();
}

std::size_t Rng::index(std::size_t n) {
  if (n == 0) throw DomainError("Rng::index: empty range");
  boost::random::uniform_int_distribution<std::size_t> dist(0, n - 1);
  return dist(engine_);
}

double Rng::normal(double mean, double stddev) {
  boost::random::normal_distribution<double> dist(mean, stddev);
  return dist(engine_);
}

double Rng::gamma(double shape) {
  if (!(shape > 0.0)) throw DomainError("Rng::gamma: shape must be positive");
  boost::random::gamma_distribution<double> dist(shape, 1.0);
  return dist(engine_);
}

bool Rng::bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("Rng::bernoulli: p outside [0, 1]");
  return uniform() < p;
}

Matrix rng_uniform(Rng& rng, double lo, double hi, std::size_t rows, std::size_t cols) {
  if (!(lo < hi)) throw DomainError("rng_uniform: requires lo < hi");
  Matrix out(rows, cols);
  for (double& v : out.values()) v = rng.uniform(lo, hi);
  return out;
}

void shuffle_in_place(Rng& rng, std::span<std::size_t> items) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = rng.index(i);
    std::swap(items[i - 1], items[j]);
  }
}

std::vector<std::size_t> rng_shuffle(Rng& rng, std::size_t n) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  shuffle_in_place(rng, perm);
  return perm;
}

std::vector<double> rng_dirichlet(Rng& rng, std::size_t k, double alpha) {
  if (k == 0) throw DomainError("rng_dirichlet: k must be positive");
  std::vector<double> draws(k);
  double total = 0.0;
  for (double& d : draws) {
    d = rng.gamma(alpha);
    total += d;
  }
  if (total <= 0.0) {
    // Tiny alpha can underflow every gamma draw; fall back to a single hot category.
    std::fill(draws.begin(), draws.end(), 0.0);
    draws[rng.index(k)] = 1.0;
    return draws;
  }
  for (double& d : draws) d /= total;
  return draws;
}

}  // namespace fedfraud
