#include "fedfraud/federated/client.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fedfraud/diagnostics.hpp"

namespace fedfraud {

AggregationMode parse_aggregation_mode(std::string_view name) {
  if (name == "fedavg_params" || name == "fedavg") return AggregationMode::fedavg_params;
  if (name == "fedsgd_gradients" || name == "fedsgd") return AggregationMode::fedsgd_gradients;
  throw DomainError("unknown aggregation mode '" + std::string(name) + "'");
}

std::string_view to_string(AggregationMode mode) noexcept {
  switch (mode) {
    case AggregationMode::fedavg_params: return "fedavg_params";
    case AggregationMode::fedsgd_gradients: return "fedsgd_gradients";
  }
  return "unknown";
}

void FedConfig::validate() const {
  if (clients == 0) throw DomainError("clients must be at least 1");
  if (rounds == 0) throw DomainError("rounds must be at least 1");
  if (local_epochs == 0) throw DomainError("local_epochs must be at least 1");
  if (!(participation > 0.0 && participation <= 1.0)) {
    throw DomainError("participation must lie in (0, 1]");
  }
  if (!(threshold >= 0.0 && threshold <= 1.0)) throw DomainError("threshold must lie in [0, 1]");
  client.validate();
}

std::size_t FedConfig::participants_per_round() const {
  // The epsilon keeps e.g. 0.3 * 10 from rounding up to 4.
  const auto m = static_cast<std::size_t>(
      std::ceil(participation * static_cast<double>(clients) - 1e-9));
  return std::clamp<std::size_t>(m, 1, clients);
}

ClientState make_client(ClientShard shard, const Rng& master) {
  ClientState state;
  state.client_id = shard.client_id;
  state.rng = party_stream(master, shard.client_id);
  state.shard = std::move(shard);
  return state;
}

std::optional<LocalResult> local_update(ClientState& client, const MlpParams& global,
                                        const FedConfig& config) {
  const Dataset& data = client.shard.data;
  if (data.empty()) {
    warn("client " + std::to_string(client.client_id) + " has an empty shard; skipping");
    return std::nullopt;
  }
  LocalResult result;
  result.contribution.sample_count = data.size();
  if (config.mode == AggregationMode::fedavg_params) {
    MlpParams local = global;
    for (std::size_t e = 0; e < config.local_epochs; ++e) {
      sgd_epoch(local, data, config.client, client.rng);
    }
    result.local_loss = dataset_loss(local, data, config.client.positive_weight);
    result.contribution.values = local.as_vector();
  } else {
    const ForwardPass pass = mlp_forward(global, data.features);
    result.local_loss = mlp_loss(pass.probabilities, data.labels, config.client.positive_weight);
    result.contribution.values =
        mlp_backward(global, pass, data.labels, config.client.positive_weight).gradient;
  }
  return result;
}

}  // namespace fedfraud
