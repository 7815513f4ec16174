#pragma once

#include <cstddef>
#include <cstdint>

#include "fedfraud/data/dataset.hpp"

namespace fedfraud {

/// Two Gaussian clusters with a configurable fraud rate.
///
/// Columns follow the ULB layout: Time, V1..V{features-2}, Amount. Each row is
/// fraud with probability `fraud_fraction`. Legit V-features are N(0, 1);
/// fraud rows shift the first min(4, features-2) V-features so the mean
/// offset has Euclidean norm `separation`. Time and Amount carry no signal.
/// The Bayes-optimal AUC is Phi(separation / sqrt(2)).
struct SyntheticParams {
  std::size_t rows = 10000;
  double fraud_fraction = 0.0017;
  double separation = 3.0;
  std::size_t features = 30;
  std::uint64_t seed = 1;
};

/// Throws DomainError for rows == 0, features < 3, a fraction outside
/// [0, 1], or a negative separation.
Dataset generate_synthetic(const SyntheticParams& params);

}  // namespace fedfraud
