#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fedfraud/data/dataset.hpp"
#include "fedfraud/experiments/config.hpp"
#include "fedfraud/federated/trainer.hpp"
#include "fedfraud/models/mlp.hpp"

namespace fedfraud {

/// Loads the CSV named by the config or generates the synthetic dataset.
Dataset load_source(const ExperimentConfig& config);

/// Seed of repetition `rep` derived from the master seed.
std::uint64_t repetition_seed(std::uint64_t master_seed, std::size_t rep);

/// Train/test data after optional resampling, the stratified split, and
/// standardization fit on the training half.
struct PreparedData {
  Dataset train;
  Dataset test;
};

PreparedData prepare_data(const Dataset& full, const ExperimentConfig& config, std::uint64_t run_seed);

struct ModelRow {
  std::string model;
  double auc = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double accuracy = 0.0;
};

/// One row per repetition and model; the summary holds means over repetitions.
struct BenchmarkReport {
  std::vector<ModelRow> summary;
  std::vector<std::pair<std::uint64_t, ModelRow>> runs;
  /// Federated round series, tagged with the repetition seed.
  std::vector<std::pair<std::uint64_t, RoundReport>> rounds;
  /// Final federated parameters of the first repetition.
  MlpParams federated_params;
};

/// LR, DT, centralized MLP and federated MLP trained on one split per
/// repetition; every model sees the same split.
BenchmarkReport run_benchmark(const Dataset& full, const ExperimentConfig& config);

struct SweepRow {
  std::size_t sample_count = 0;
  SamplingRatio ratio;
  std::uint64_t seed = 0;
  double auc = 0.0;
};

struct SweepSummaryRow {
  std::size_t sample_count = 0;
  SamplingRatio ratio;
  std::size_t runs = 0;
  double mean_auc = 0.0;
};

struct SweepReport {
  /// Sorted by (sample_count, ratio order in config, repetition).
  std::vector<SweepRow> rows;
  std::vector<SweepSummaryRow> summary;
  std::vector<std::string> skipped;
};

/// For each sample count, ratio and repetition: draw a training set, train
/// the configured model and record test AUC. The held-out test split keeps
/// the source class balance.
SweepReport run_sweep(const Dataset& full, const ExperimentConfig& config);

/// Training rows for one sweep cell, as positions into `train`. Fraud and
/// legit orders are fixed per repetition, so larger sample counts extend
/// smaller ones. Returns an empty vector (and a reason) when the cell cannot
/// be drawn.
std::vector<std::size_t> sweep_training_rows(const Dataset& train, std::size_t sample_count,
                                             SamplingRatio ratio, SampleCountBasis basis,
                                             std::uint64_t rep_seed, std::string& skip_reason);

struct FedVsCentralReport {
  ModelRow central;
  ModelRow federated;
  double auc_delta = 0.0;  // |AUC_fed - AUC_central|, mean over repetitions
  std::vector<std::pair<std::uint64_t, RoundReport>> central_rounds;
  std::vector<std::pair<std::uint64_t, RoundReport>> federated_rounds;
};

FedVsCentralReport run_fed_vs_central(const Dataset& full, const ExperimentConfig& config);

/// Report writers. Every file is a pure function of the report and config.
void write_benchmark(const std::filesystem::path& dir, const BenchmarkReport& report,
                     const ExperimentConfig& config);
void write_sweep(const std::filesystem::path& dir, const SweepReport& report,
                 const ExperimentConfig& config);
void write_fed_vs_central(const std::filesystem::path& dir, const FedVsCentralReport& report,
                          const ExperimentConfig& config);

}  // namespace fedfraud
