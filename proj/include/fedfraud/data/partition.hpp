#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "fedfraud/data/dataset.hpp"
#include "fedfraud/numeric/rng.hpp"

namespace fedfraud {

/// One institution's private partition. Ids run 1..K.
struct ClientShard {
  std::size_t client_id = 0;
  Dataset data;
};

enum class PartitionKind { iid, quantity_skew, label_skew };

PartitionKind parse_partition_kind(std::string_view name);
std::string_view to_string(PartitionKind kind) noexcept;

struct PartitionScheme {
  PartitionKind kind = PartitionKind::iid;
  /// Concentration of the Dirichlet draw for quantity_skew; smaller is more uneven.
  double dirichlet_alpha = 1.0;
  /// Share of all fraud rows placed on the first ceil(K/2) shards for label_skew.
  double fraud_concentration = 0.8;
};

/// Splits `train` into `k` disjoint shards that together cover every row.
///
/// - iid: shuffled rows dealt into contiguous blocks whose sizes differ by at most one.
/// - quantity_skew: every shard gets one row, the rest follow a Dirichlet(alpha)
///   proportion vector (largest-remainder rounding).
/// - label_skew: legit rows are spread evenly; `fraud_concentration` of the
///   fraud rows go to shards 1..ceil(K/2), the remainder to the other shards.
///
/// k == 1 returns the training set unchanged as a single shard.
std::vector<ClientShard> partition(const Dataset& train, std::size_t k,
                                   const PartitionScheme& scheme, Rng& rng);

}  // namespace fedfraud
