#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "fedfraud/data/partition.hpp"
#include "fedfraud/federated/aggregator.hpp"
#include "fedfraud/models/mlp.hpp"
#include "fedfraud/numeric/rng.hpp"

namespace fedfraud {

enum class AggregationMode {
  /// Clients run local epochs and return parameters; the server averages them.
  fedavg_params,
  /// Clients return one full-batch gradient; the server steps with the average.
  fedsgd_gradients,
};

AggregationMode parse_aggregation_mode(std::string_view name);
std::string_view to_string(AggregationMode mode) noexcept;

struct FedConfig {
  std::size_t clients = 5;
  std::size_t rounds = 30;
  std::size_t local_epochs = 1;
  /// Fraction C of clients sampled each round; ceil(C * K) take part.
  double participation = 1.0;
  AggregationMode mode = AggregationMode::fedavg_params;
  MlpHyperparams client;
  std::uint64_t seed = 42;
  /// Worker threads for client updates. Results do not depend on it.
  std::size_t threads = 1;
  double threshold = 0.5;

  void validate() const;
  std::size_t participants_per_round() const;
};

/// A simulated institution. The shard never leaves the client; local_update
/// returns only a Contribution.
struct ClientState {
  std::size_t client_id = 0;
  ClientShard shard;
  /// Batch-order stream; advanced only when this client trains.
  Rng rng{0};
};

ClientState make_client(ClientShard shard, const Rng& master);

struct LocalResult {
  Contribution contribution;
  /// Mean loss on the shard: at the returned params (fedavg) or at the
  /// global params the gradient was taken at (fedsgd).
  double local_loss = 0.0;
};

/// Empty shards produce a warning and std::nullopt (the client sits out).
std::optional<LocalResult> local_update(ClientState& client, const MlpParams& global,
                                        const FedConfig& config);

}  // namespace fedfraud
