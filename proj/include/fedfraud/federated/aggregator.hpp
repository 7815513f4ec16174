#pragma once

// The aggregator sees only (vector, sample count) pairs. Keep this header and
// its source free of data/ and client includes; tests/cli/check_privacy_boundary.cmake
// enforces that.

#include <cstddef>
#include <span>
#include <vector>

namespace fedfraud {

/// What one participant hands the server in a round: flat parameters
/// (fedavg) or a flat gradient (fedsgd), and how many rows produced it.
struct Contribution {
  std::vector<double> values;
  std::size_t sample_count = 0;
};

/// n_k / sum(n_j) for each contribution, in input order.
std::vector<double> aggregation_weights(std::span<const Contribution> contributions);

/// Sample-weighted mean sum_k (n_k / sum_j n_j) * v_k.
///
/// Contributions are summed in the order given; callers pass them sorted by
/// client id so the result does not depend on worker scheduling. Throws
/// DomainError when empty or when every sample count is zero, ShapeError on
/// length mismatch.
std::vector<double> aggregate(std::span<const Contribution> contributions);

}  // namespace fedfraud
