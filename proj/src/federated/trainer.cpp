#include "fedfraud/federated/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <string>

#include "fedfraud/parallel.hpp"

namespace fedfraud {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Zero rounds is a valid request to these drivers (the result is the initial
// model) even though a FedConfig used for actual rounds needs rounds >= 1.
void validate_except_rounds(FedConfig config) {
  config.rounds = std::max<std::size_t>(config.rounds, 1);
  config.validate();
}

std::size_t feature_count(const std::vector<ClientShard>& shards) {
  for (const auto& s : shards) {
    if (!s.data.empty()) return s.data.n_features();
  }
  throw DomainError("federated training: every shard is empty");
}

}  // namespace

MlpParams initial_params(std::size_t input_dim, const FedConfig& config) {
  Rng init = init_stream(Rng(config.seed));
  return mlp_init(mlp_layer_sizes(input_dim, config.client), config.client.activation,
                  config.client.init_scale, init);
}

std::optional<EvaluationSummary> evaluate_params(const MlpParams& params, const Dataset& test,
                                                 double threshold) {
  if (test.empty() || test.fraud_count() == 0 || test.legit_count() == 0) return std::nullopt;
  return evaluate(mlp_predict(params, test.features), test.labels, threshold);
}

FederatedTrainer::FederatedTrainer(std::vector<ClientShard> shards, FedConfig config)
    : FederatedTrainer(shards, config, initial_params(feature_count(shards), config)) {}

FederatedTrainer::FederatedTrainer(std::vector<ClientShard> shards, FedConfig config,
                                   MlpParams initial)
    : config_(std::move(config)), master_(config_.seed), global_(std::move(initial)) {
  config_.validate();
  if (shards.size() != config_.clients) {
    throw DomainError("FederatedTrainer: config names " + std::to_string(config_.clients) +
                      " clients but " + std::to_string(shards.size()) + " shards were given");
  }
  global_.validate();
  std::sort(shards.begin(), shards.end(),
            [](const ClientShard& a, const ClientShard& b) { return a.client_id < b.client_id; });
  clients_.reserve(shards.size());
  for (auto& s : shards) clients_.push_back(make_client(std::move(s), master_));
}

std::vector<std::size_t> FederatedTrainer::select_clients(std::size_t round_index) const {
  const std::size_t m = config_.participants_per_round();
  std::vector<std::size_t> positions(clients_.size());
  for (std::size_t i = 0; i < positions.size(); ++i) positions[i] = i;
  if (m < clients_.size()) {
    Rng rng = master_.split("select").split(static_cast<std::uint64_t>(round_index));
    shuffle_in_place(rng, positions);
    positions.resize(m);
  }
  std::vector<std::size_t> ids;
  ids.reserve(positions.size());
  for (std::size_t p : positions) ids.push_back(clients_[p].client_id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

RoundReport FederatedTrainer::run_round(std::size_t round_index, const Dataset* test) {
  const auto start = Clock::now();
  const auto selected = select_clients(round_index);

  std::vector<ClientState*> workers;
  for (std::size_t id : selected) {
    auto it = std::find_if(clients_.begin(), clients_.end(),
                           [id](const ClientState& c) { return c.client_id == id; });
    workers.push_back(&*it);
  }

  std::vector<std::optional<LocalResult>> results(workers.size());
  const MlpParams& global = global_;
  parallel_for(workers.size(), config_.threads, [&](std::size_t i) {
    results[i] = local_update(*workers[i], global, config_);
  });

  RoundReport report;
  report.round = round_index;
  std::vector<Contribution> contributions;
  std::vector<double> losses;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!results[i]) continue;
    report.participants.push_back(workers[i]->client_id);
    losses.push_back(results[i]->local_loss);
    contributions.push_back(std::move(results[i]->contribution));
  }
  if (contributions.empty()) {
    throw RoundError("round " + std::to_string(round_index) + ": no client produced an update");
  }

  const auto weights = aggregation_weights(contributions);
  for (std::size_t i = 0; i < weights.size(); ++i) report.train_loss += weights[i] * losses[i];

  const auto combined = aggregate(contributions);
  if (config_.mode == AggregationMode::fedavg_params) {
    global_.assign_vector(combined);
  } else {
    apply_gradient(global_, combined, config_.client.learning_rate);
  }

  if (test != nullptr) report.test = evaluate_params(global_, *test, config_.threshold);
  report.seconds = seconds_since(start);
  return report;
}

TrainingResult run_training(std::vector<ClientShard> shards, const Dataset& test,
                            const FedConfig& config) {
  validate_except_rounds(config);
  if (config.rounds == 0) {
    return {initial_params(feature_count(shards), config), {}};
  }
  FederatedTrainer trainer(std::move(shards), config);
  TrainingResult result;
  for (std::size_t r = 0; r < config.rounds; ++r) result.rounds.push_back(trainer.run_round(r, &test));
  result.params = trainer.global_params();
  return result;
}

TrainingResult run_centralized(const Dataset& train, const Dataset& test, const FedConfig& config) {
  validate_except_rounds(config);
  if (train.empty()) throw DomainError("run_centralized: empty training set");
  const Rng master(config.seed);
  TrainingResult result;
  result.params = initial_params(train.n_features(), config);
  Rng batches = party_stream(master, 1);
  for (std::size_t r = 0; r < config.rounds; ++r) {
    const auto start = Clock::now();
    RoundReport report;
    report.round = r;
    report.participants = {1};
    if (config.mode == AggregationMode::fedavg_params) {
      for (std::size_t e = 0; e < config.local_epochs; ++e) {
        sgd_epoch(result.params, train, config.client, batches);
      }
      report.train_loss = dataset_loss(result.params, train, config.client.positive_weight);
    } else {
      const ForwardPass pass = mlp_forward(result.params, train.features);
      report.train_loss = mlp_loss(pass.probabilities, train.labels, config.client.positive_weight);
      const auto g = mlp_backward(result.params, pass, train.labels, config.client.positive_weight);
      apply_gradient(result.params, g.gradient, config.client.learning_rate);
    }
    report.test = evaluate_params(result.params, test, config.threshold);
    report.seconds = seconds_since(start);
    result.rounds.push_back(std::move(report));
  }
  return result;
}

}  // namespace fedfraud
