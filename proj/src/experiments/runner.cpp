#include "fedfraud/experiments/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "fedfraud/data/csv.hpp"
#include "fedfraud/data/partition.hpp"
#include "fedfraud/data/preprocess.hpp"
#include "fedfraud/data/synthetic.hpp"
#include "fedfraud/diagnostics.hpp"
#include "fedfraud/metrics/metrics.hpp"
#include "fedfraud/models/checkpoint.hpp"
#include "fedfraud/models/classifier.hpp"
#include "fedfraud/models/decision_tree.hpp"
#include "fedfraud/parallel.hpp"

namespace fedfraud {

namespace {

ModelRow to_row(std::string name, const EvaluationSummary& s) {
  return {std::move(name), s.auc, s.precision.value, s.recall.value, s.f1.value, s.accuracy};
}

ModelRow mean_row(const std::string& name, const std::vector<ModelRow>& rows) {
  ModelRow out;
  out.model = name;
  for (const auto& r : rows) {
    out.auc += r.auc;
    out.precision += r.precision;
    out.recall += r.recall;
    out.f1 += r.f1;
    out.accuracy += r.accuracy;
  }
  const auto n = static_cast<double>(rows.size());
  out.auc /= n;
  out.precision /= n;
  out.recall /= n;
  out.f1 /= n;
  out.accuracy /= n;
  return out;
}

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string participants_field(const std::vector<std::size_t>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(ids[i]);
  }
  return out;
}

std::ofstream open_report(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  auto out = open_report(path);
  out << text;
}

const char* kModelHeader = "model,auc,precision,recall,f1,accuracy\n";

std::string model_csv_line(const ModelRow& r) {
  return r.model + "," + fixed(r.auc) + "," + fixed(r.precision) + "," + fixed(r.recall) + "," +
         fixed(r.f1) + "," + fixed(r.accuracy) + "\n";
}

std::string model_table(const std::vector<ModelRow>& rows) {
  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-14s %8s %8s %8s %8s %8s\n", "Model", "AUC", "PR", "RE", "F1", "ACC");
  out << buf;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%-14s %8.4f %8.4f %8.4f %8.4f %8.4f\n", r.model.c_str(), r.auc,
                  r.precision, r.recall, r.f1, r.accuracy);
    out << buf;
  }
  return out.str();
}

std::string rounds_header() {
  return "seed,series,round,participants,train_loss,auc,precision,recall,f1,accuracy\n";
}

std::string round_line(std::uint64_t seed, const std::string& series, const RoundReport& r) {
  std::string line = std::to_string(seed) + "," + series + "," + std::to_string(r.round) + "," +
                     participants_field(r.participants) + "," + fixed(r.train_loss, 9);
  if (r.test) {
    line += "," + fixed(r.test->auc) + "," + fixed(r.test->precision.value) + "," +
            fixed(r.test->recall.value) + "," + fixed(r.test->f1.value) + "," +
            fixed(r.test->accuracy);
  } else {
    line += ",,,,,";
  }
  return line + "\n";
}

/// Trains one model kind and returns its test scores.
struct TrainedModel {
  std::vector<double> scores;
  std::vector<RoundReport> rounds;
  MlpParams params;
};

TrainedModel train_and_score(ModelKind kind, const Dataset& train, const Dataset& test,
                             const ExperimentConfig& config, std::uint64_t seed,
                             std::size_t threads) {
  TrainedModel out;
  switch (kind) {
    case ModelKind::logistic: {
      LogisticRegression lr(config.logistic);
      Rng rng(seed);
      lr.fit(train, rng);
      out.scores = lr.predict_proba(test.features);
      out.params = lr.params();
      break;
    }
    case ModelKind::tree: {
      DecisionTree dt(config.tree);
      Rng rng(seed);
      dt.fit(train, rng);
      out.scores = dt.predict_proba(test.features);
      break;
    }
    case ModelKind::mlp_central:
    case ModelKind::mlp_federated: {
      FedConfig fed = config.fed_config(seed);
      fed.threads = threads;
      TrainingResult result;
      if (kind == ModelKind::mlp_central) {
        result = run_centralized(train, test, fed);
      } else {
        Rng part_rng = Rng(seed).split("partition");
        result = run_training(partition(train, fed.clients, config.partition, part_rng), test, fed);
      }
      out.scores = mlp_predict(result.params, test.features);
      out.rounds = std::move(result.rounds);
      out.params = std::move(result.params);
      break;
    }
  }
  return out;
}

}  // namespace

Dataset load_source(const ExperimentConfig& config) {
  if (config.data.csv) return load_csv(*config.data.csv, config.data.schema);
  return generate_synthetic(config.data.synthetic);
}

std::uint64_t repetition_seed(std::uint64_t master_seed, std::size_t rep) {
  return Rng(master_seed).split("repetition").split(static_cast<std::uint64_t>(rep)).seed();
}

PreparedData prepare_data(const Dataset& full, const ExperimentConfig& config, std::uint64_t run_seed) {
  const Rng master(run_seed);
  Dataset pool = full;
  if (config.resample) {
    Rng rng = master.split("resample");
    pool = resample_ratio(full, *config.resample, rng);
  }
  Rng split_rng = master.split("split");
  auto split = stratified_split(pool, config.test_fraction, split_rng);
  const auto scaler = fit_standardizer(split.train);
  return {apply_standardizer(scaler, split.train), apply_standardizer(scaler, split.test)};
}

BenchmarkReport run_benchmark(const Dataset& full, const ExperimentConfig& config) {
  config.validate();
  BenchmarkReport report;
  const std::vector<std::pair<ModelKind, std::string>> models{
      {ModelKind::logistic, "LR"},
      {ModelKind::tree, "DT"},
      {ModelKind::mlp_central, "MLP-central"},
      {ModelKind::mlp_federated, "MLP-fed"}};
  std::vector<std::vector<ModelRow>> per_model(models.size());

  for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
    const std::uint64_t seed = repetition_seed(config.seed, rep);
    const PreparedData data = prepare_data(full, config, seed);
    for (std::size_t m = 0; m < models.size(); ++m) {
      auto trained = train_and_score(models[m].first, data.train, data.test, config, seed, config.threads);
      const ModelRow row = to_row(models[m].second, evaluate(trained.scores, data.test.labels, config.threshold));
      per_model[m].push_back(row);
      report.runs.emplace_back(seed, row);
      if (models[m].first == ModelKind::mlp_federated) {
        for (auto& r : trained.rounds) report.rounds.emplace_back(seed, std::move(r));
        if (rep == 0) report.federated_params = std::move(trained.params);
      }
    }
  }
  for (std::size_t m = 0; m < models.size(); ++m) {
    report.summary.push_back(mean_row(models[m].second, per_model[m]));
  }
  return report;
}

std::vector<std::size_t> sweep_training_rows(const Dataset& train, std::size_t sample_count,
                                             SamplingRatio ratio, SampleCountBasis basis,
                                             std::uint64_t rep_seed, std::string& skip_reason) {
  skip_reason.clear();
  if (sample_count > train.size()) {
    skip_reason = "sample_count " + std::to_string(sample_count) + " exceeds the " +
                  std::to_string(train.size()) + " available training rows";
    return {};
  }
  const Rng master = Rng(rep_seed).split("sweep-draw");
  std::vector<std::size_t> rows;

  if (basis == SampleCountBasis::resampled) {
    auto fraud = positions_with_label(train, 1);
    auto legit = positions_with_label(train, 0);
    Rng fraud_rng = master.split("fraud");
    Rng legit_rng = master.split("legit");
    shuffle_in_place(fraud_rng, fraud);
    shuffle_in_place(legit_rng, legit);
    const double fraud_share =
        static_cast<double>(ratio.fraud) / static_cast<double>(ratio.fraud + ratio.legit);
    const std::size_t n_fraud = std::min(
        fraud.size(), static_cast<std::size_t>(std::llround(fraud_share * static_cast<double>(sample_count))));
    if (n_fraud == 0) {
      skip_reason = "sample_count " + std::to_string(sample_count) + " at " + ratio.to_string() +
                    " leaves no fraud rows";
      return {};
    }
    const std::size_t n_legit = std::min({legit.size(), ratio.legit_for(n_fraud), sample_count - n_fraud});
    rows.assign(fraud.begin(), fraud.begin() + static_cast<std::ptrdiff_t>(n_fraud));
    rows.insert(rows.end(), legit.begin(), legit.begin() + static_cast<std::ptrdiff_t>(n_legit));
  } else {
    Rng pool_rng = master.split("pool");
    auto perm = rng_shuffle(pool_rng, train.size());
    perm.resize(sample_count);
    std::vector<std::size_t> legit;
    for (std::size_t p : perm) (train.labels[p] == 1 ? rows : legit).push_back(p);
    if (rows.empty()) {
      skip_reason = "pool of " + std::to_string(sample_count) + " rows holds no fraud";
      return {};
    }
    const std::size_t n_legit = std::min(legit.size(), ratio.legit_for(rows.size()));
    rows.insert(rows.end(), legit.begin(), legit.begin() + static_cast<std::ptrdiff_t>(n_legit));
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

SweepReport run_sweep(const Dataset& full, const ExperimentConfig& config) {
  config.validate();
  const auto& sweep = config.sweep;

  struct RepData {
    std::uint64_t seed;
    TrainTestSplit split;
  };
  std::vector<RepData> reps;
  for (std::size_t rep = 0; rep < sweep.repetitions; ++rep) {
    const std::uint64_t seed = repetition_seed(config.seed, rep);
    Rng split_rng = Rng(seed).split("split");
    reps.push_back({seed, stratified_split(full, config.test_fraction, split_rng)});
  }

  struct Cell {
    std::size_t count_idx;
    std::size_t ratio_idx;
    std::size_t rep;
    std::optional<double> auc;
    std::string skip_reason;
  };
  std::vector<Cell> cells;
  for (std::size_t c = 0; c < sweep.sample_counts.size(); ++c)
    for (std::size_t r = 0; r < sweep.ratios.size(); ++r)
      for (std::size_t rep = 0; rep < reps.size(); ++rep) cells.push_back({c, r, rep, std::nullopt, {}});

  parallel_for(cells.size(), config.threads, [&](std::size_t i) {
    Cell& cell = cells[i];
    const RepData& rep = reps[cell.rep];
    const auto rows = sweep_training_rows(rep.split.train, sweep.sample_counts[cell.count_idx],
                                          sweep.ratios[cell.ratio_idx], sweep.basis, rep.seed,
                                          cell.skip_reason);
    if (rows.empty()) return;
    const Dataset raw = rep.split.train.subset(rows);
    if (sweep.model == ModelKind::mlp_federated && raw.size() < config.federated.clients) {
      cell.skip_reason = "training set of " + std::to_string(raw.size()) + " rows cannot feed " +
                         std::to_string(config.federated.clients) + " clients";
      return;
    }
    const auto scaler = fit_standardizer(raw);
    const Dataset train = apply_standardizer(scaler, raw);
    const Dataset test = apply_standardizer(scaler, rep.split.test);
    const auto trained = train_and_score(sweep.model, train, test, config, rep.seed, 1);
    cell.auc = auc(trained.scores, test.labels);
  });

  SweepReport report;
  for (const auto& cell : cells) {
    const std::size_t count = sweep.sample_counts[cell.count_idx];
    const SamplingRatio ratio = sweep.ratios[cell.ratio_idx];
    if (!cell.auc) {
      const std::string msg = "sweep cell (" + std::to_string(count) + ", " + ratio.to_string() +
                              ", seed " + std::to_string(reps[cell.rep].seed) + ") skipped: " +
                              cell.skip_reason;
      warn(msg);
      report.skipped.push_back(msg);
      continue;
    }
    report.rows.push_back({count, ratio, reps[cell.rep].seed, *cell.auc});
  }
  for (std::size_t c = 0; c < sweep.sample_counts.size(); ++c) {
    for (const auto& ratio : sweep.ratios) {
      SweepSummaryRow s{sweep.sample_counts[c], ratio, 0, 0.0};
      for (const auto& row : report.rows) {
        if (row.sample_count == s.sample_count && row.ratio == ratio) {
          ++s.runs;
          s.mean_auc += row.auc;
        }
      }
      if (s.runs > 0) {
        s.mean_auc /= static_cast<double>(s.runs);
        report.summary.push_back(s);
      }
    }
  }
  return report;
}

FedVsCentralReport run_fed_vs_central(const Dataset& full, const ExperimentConfig& config) {
  config.validate();
  FedVsCentralReport report;
  std::vector<ModelRow> central_rows;
  std::vector<ModelRow> fed_rows;
  double delta_sum = 0.0;
  for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
    const std::uint64_t seed = repetition_seed(config.seed, rep);
    const PreparedData data = prepare_data(full, config, seed);
    auto central = train_and_score(ModelKind::mlp_central, data.train, data.test, config, seed, config.threads);
    auto fed = train_and_score(ModelKind::mlp_federated, data.train, data.test, config, seed, config.threads);
    central_rows.push_back(to_row("MLP-central", evaluate(central.scores, data.test.labels, config.threshold)));
    fed_rows.push_back(to_row("MLP-fed", evaluate(fed.scores, data.test.labels, config.threshold)));
    delta_sum += std::abs(fed_rows.back().auc - central_rows.back().auc);
    for (auto& r : central.rounds) report.central_rounds.emplace_back(seed, std::move(r));
    for (auto& r : fed.rounds) report.federated_rounds.emplace_back(seed, std::move(r));
  }
  report.central = mean_row("MLP-central", central_rows);
  report.federated = mean_row("MLP-fed", fed_rows);
  report.auc_delta = delta_sum / static_cast<double>(config.repetitions);
  return report;
}

void write_benchmark(const std::filesystem::path& dir, const BenchmarkReport& report,
                     const ExperimentConfig& config) {
  std::filesystem::create_directories(dir);
  {
    auto out = open_report(dir / "report.csv");
    out << kModelHeader;
    for (const auto& r : report.summary) out << model_csv_line(r);
  }
  {
    auto out = open_report(dir / "runs.csv");
    out << "seed," << kModelHeader;
    for (const auto& [seed, r] : report.runs) out << seed << ',' << model_csv_line(r);
  }
  {
    auto out = open_report(dir / "rounds.csv");
    out << rounds_header();
    for (const auto& [seed, r] : report.rounds) out << round_line(seed, "federated", r);
  }
  std::ostringstream txt;
  txt << "Fraud detection benchmark\n"
      << "seed: " << config.seed << "  repetitions: " << config.repetitions
      << "  threshold: " << fixed(config.threshold, 2) << "\n\n"
      << model_table(report.summary) << "\nconfig:\n"
      << config_echo(config);
  write_text(dir / "report.txt", txt.str());
  write_text(dir / "config.json", config_echo(config));
  if (report.federated_params.layer_count() > 0) {
    save_checkpoint(dir / "mlp_federated.ckpt", report.federated_params);
  }
}

void write_sweep(const std::filesystem::path& dir, const SweepReport& report,
                 const ExperimentConfig& config) {
  std::filesystem::create_directories(dir);
  {
    auto out = open_report(dir / "sweep.csv");
    out << "sample_count,ratio,seed,auc\n";
    for (const auto& r : report.rows) {
      out << r.sample_count << ',' << r.ratio.to_string() << ',' << r.seed << ',' << fixed(r.auc) << '\n';
    }
  }
  {
    auto out = open_report(dir / "sweep_summary.csv");
    out << "sample_count,ratio,runs,mean_auc\n";
    for (const auto& r : report.summary) {
      out << r.sample_count << ',' << r.ratio.to_string() << ',' << r.runs << ',' << fixed(r.mean_auc) << '\n';
    }
  }
  std::ostringstream txt;
  txt << "Sampling-ratio sensitivity sweep (model: " << to_string(config.sweep.model) << ")\n"
      << "seed: " << config.seed << "  repetitions: " << config.sweep.repetitions << "\n\n";
  char buf[128];
  std::snprintf(buf, sizeof buf, "%12s", "samples");
  txt << buf;
  for (const auto& ratio : config.sweep.ratios) {
    std::snprintf(buf, sizeof buf, " %10s", ratio.to_string().c_str());
    txt << buf;
  }
  txt << '\n';
  for (std::size_t count : config.sweep.sample_counts) {
    std::snprintf(buf, sizeof buf, "%12zu", count);
    txt << buf;
    for (const auto& ratio : config.sweep.ratios) {
      auto it = std::find_if(report.summary.begin(), report.summary.end(), [&](const SweepSummaryRow& s) {
        return s.sample_count == count && s.ratio == ratio;
      });
      if (it == report.summary.end()) {
        std::snprintf(buf, sizeof buf, " %10s", "-");
      } else {
        std::snprintf(buf, sizeof buf, " %10.4f", it->mean_auc);
      }
      txt << buf;
    }
    txt << '\n';
  }
  txt << "\nskipped cells: " << report.skipped.size() << '\n';
  for (const auto& s : report.skipped) txt << "  " << s << '\n';
  txt << "\nconfig:\n" << config_echo(config);
  write_text(dir / "report.txt", txt.str());
  write_text(dir / "config.json", config_echo(config));
}

void write_fed_vs_central(const std::filesystem::path& dir, const FedVsCentralReport& report,
                          const ExperimentConfig& config) {
  std::filesystem::create_directories(dir);
  {
    auto out = open_report(dir / "report.csv");
    out << kModelHeader << model_csv_line(report.central) << model_csv_line(report.federated);
  }
  {
    auto out = open_report(dir / "rounds.csv");
    out << rounds_header();
    for (const auto& [seed, r] : report.central_rounds) out << round_line(seed, "central", r);
    for (const auto& [seed, r] : report.federated_rounds) out << round_line(seed, "federated", r);
  }
  std::ostringstream txt;
  txt << "Centralized vs federated MLP\n"
      << "seed: " << config.seed << "  repetitions: " << config.repetitions
      << "  clients: " << config.federated.clients
      << "  partition: " << to_string(config.partition.kind) << "\n\n"
      << model_table({report.central, report.federated}) << "\n|AUC_fed - AUC_central|: "
      << fixed(report.auc_delta) << "\n\nconfig:\n"
      << config_echo(config);
  write_text(dir / "report.txt", txt.str());
  write_text(dir / "config.json", config_echo(config));
}

}  // namespace fedfraud
