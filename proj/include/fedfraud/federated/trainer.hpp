#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fedfraud/data/dataset.hpp"
#include "fedfraud/data/partition.hpp"
#include "fedfraud/federated/client.hpp"
#include "fedfraud/metrics/metrics.hpp"
#include "fedfraud/models/mlp.hpp"

namespace fedfraud {

/// A round in which no client produced an update.
class RoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RoundReport {
  std::size_t round = 0;
  /// Client ids that contributed, ascending.
  std::vector<std::size_t> participants;
  /// sum over participants of (n_k / n_participating) * L_k.
  double train_loss = 0.0;
  /// Metrics of the new global model on the held-out set, when one is given
  /// and contains both classes.
  std::optional<EvaluationSummary> test;
  /// Wall clock; excluded from report files so reruns stay byte-identical.
  double seconds = 0.0;
};

/// Synchronous federated training over a fixed set of simulated clients.
///
/// Each round samples ceil(C * K) clients with the round's own stream, fans
/// local_update out to up to `config.threads` workers, then folds the
/// contributions in ascending client-id order. Client streams are private to
/// each client, so the outcome does not depend on scheduling.
class FederatedTrainer {
 public:
  /// Initializes global parameters from the config seed.
  FederatedTrainer(std::vector<ClientShard> shards, FedConfig config);
  FederatedTrainer(std::vector<ClientShard> shards, FedConfig config, MlpParams initial);

  /// Runs round `round_index` (0-based) and replaces the global parameters.
  RoundReport run_round(std::size_t round_index, const Dataset* test = nullptr);

  /// Client ids sampled for a round, ascending.
  std::vector<std::size_t> select_clients(std::size_t round_index) const;

  const MlpParams& global_params() const noexcept { return global_; }
  const FedConfig& config() const noexcept { return config_; }
  std::size_t client_count() const noexcept { return clients_.size(); }

 private:
  FedConfig config_;
  Rng master_;
  std::vector<ClientState> clients_;
  MlpParams global_;
};

/// Seeded initial parameters for a run with `input_dim` features.
MlpParams initial_params(std::size_t input_dim, const FedConfig& config);

struct TrainingResult {
  MlpParams params;
  std::vector<RoundReport> rounds;
};

/// config.rounds federated rounds, evaluating on `test` after each one.
/// Zero rounds returns the initial parameters and no reports.
TrainingResult run_training(std::vector<ClientShard> shards, const Dataset& test,
                            const FedConfig& config);

/// The centralized counterpart on pooled data, structured in the same rounds:
/// fedavg mode runs local_epochs SGD epochs per round, fedsgd mode takes one
/// full-batch gradient step. Uses the same init and party-1 stream as a
/// single federated client, so K = 1 federated training reproduces it exactly.
TrainingResult run_centralized(const Dataset& train, const Dataset& test, const FedConfig& config);

/// Metrics for `params` on `test`, or nullopt if `test` lacks a class.
std::optional<EvaluationSummary> evaluate_params(const MlpParams& params, const Dataset& test,
                                                 double threshold);

}  // namespace fedfraud
