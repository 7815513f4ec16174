#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fedfraud/data/csv.hpp"
#include "fedfraud/data/partition.hpp"
#include "fedfraud/data/preprocess.hpp"
#include "fedfraud/data/synthetic.hpp"
#include "fedfraud/federated/client.hpp"
#include "fedfraud/models/decision_tree.hpp"
#include "fedfraud/models/mlp.hpp"

namespace fedfraud {

/// Invalid configuration. `field()` is a dotted path such as "federated.rounds".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& detail);
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct DataSource {
  /// Unset means: generate the synthetic dataset below.
  std::optional<std::filesystem::path> csv;
  CsvSchema schema;
  SyntheticParams synthetic{20000, 0.01, 3.0, 30, 1};
};

enum class SampleCountBasis {
  /// The training set after ratio resampling has (up to) sample_count rows.
  resampled,
  /// sample_count rows are drawn first, then resampled to the ratio.
  pool,
};

enum class ModelKind { logistic, tree, mlp_central, mlp_federated };

ModelKind parse_model_kind(std::string_view name);
std::string_view to_string(ModelKind kind) noexcept;

struct SweepConfig {
  std::vector<std::size_t> sample_counts{500, 1000, 2000, 5000, 10000, 20000, 50000};
  std::vector<SamplingRatio> ratios{{1, 1}, {1, 100}};
  std::size_t repetitions = 5;
  ModelKind model = ModelKind::mlp_federated;
  SampleCountBasis basis = SampleCountBasis::resampled;
};

struct ExperimentConfig {
  DataSource data;
  std::uint64_t seed = 42;
  double test_fraction = 0.2;
  /// Applied to the whole dataset before the train/test split; unset keeps the raw balance.
  std::optional<SamplingRatio> resample = SamplingRatio{1, 1};
  double threshold = 0.5;
  /// Benchmark and fed-vs-central average over this many derived seeds.
  std::size_t repetitions = 1;

  /// Shared by the centralized and federated MLP; training length is
  /// federated.rounds x federated.local_epochs for both.
  MlpHyperparams mlp;
  MlpHyperparams logistic{{}, Activation::relu, 0.1, 32, 30, 1.0, 1.0};
  DecisionTreeParams tree;
  /// `client` is overwritten by `mlp`, `seed` by the run seed.
  FedConfig federated;
  PartitionScheme partition;
  SweepConfig sweep;

  // Runtime-only: never part of the config echo, never affect results.
  std::size_t threads = 1;
  std::filesystem::path out = "out";

  /// Throws ConfigError naming the offending field.
  void validate() const;
  /// Federated settings with the MLP hyperparameters, seed, threads and threshold filled in.
  FedConfig fed_config(std::uint64_t run_seed) const;
};

/// Parses the JSON config format documented in README.md. Keys left out keep
/// their defaults; unknown keys are rejected.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Resolved config as pretty JSON, without the runtime-only fields. Feeding
/// it back through parse_config reproduces the run.
std::string config_echo(const ExperimentConfig& config);

}  // namespace fedfraud
