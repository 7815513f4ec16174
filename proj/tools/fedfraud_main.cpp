// Experiment runner: benchmark | sweep-sampling | fed-vs-central | gen-synthetic.
//
// Exit codes: 0 ok, 1 config error, 2 data error, 3 runtime error.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fedfraud/data/csv.hpp"
#include "fedfraud/data/synthetic.hpp"
#include "fedfraud/experiments/config.hpp"
#include "fedfraud/experiments/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitData = 2;
constexpr int kExitRuntime = 3;

struct CommonFlags {
  std::string config_path;
  std::string data_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::optional<std::size_t> threads;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON experiment config");
  cmd->add_option("--data", flags.data_path, "CSV dataset (overrides data.csv)");
  cmd->add_option("--seed", flags.seed, "master seed");
  cmd->add_option("--out", flags.out_dir, "output directory");
  cmd->add_option("--threads", flags.threads, "worker threads")->check(CLI::PositiveNumber);
}

fedfraud::ExperimentConfig resolve(const CommonFlags& flags) {
  fedfraud::ExperimentConfig cfg =
      flags.config_path.empty() ? fedfraud::ExperimentConfig{} : fedfraud::load_config(flags.config_path);
  if (!flags.data_path.empty()) cfg.data.csv = flags.data_path;
  if (flags.seed) cfg.seed = *flags.seed;
  if (!flags.out_dir.empty()) cfg.out = flags.out_dir;
  if (flags.threads) cfg.threads = *flags.threads;
  cfg.validate();
  return cfg;
}

void announce(const std::filesystem::path& dir, std::chrono::steady_clock::time_point start) {
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cerr << "wrote reports to " << dir.string() << " (" << seconds << " s)\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Federated fraud-detection experiments"};
  app.require_subcommand(1);

  CommonFlags bench_flags;
  CommonFlags sweep_flags;
  CommonFlags fvc_flags;
  auto* bench = app.add_subcommand("benchmark", "LR, DT, centralized and federated MLP on one split");
  auto* sweep = app.add_subcommand("sweep-sampling", "AUC over sample counts and fraud:legit ratios");
  auto* fvc = app.add_subcommand("fed-vs-central", "same MLP trained centrally and federatedly");
  add_common(bench, bench_flags);
  add_common(sweep, sweep_flags);
  add_common(fvc, fvc_flags);

  auto* gen = app.add_subcommand("gen-synthetic", "write a synthetic imbalanced CSV");
  fedfraud::SyntheticParams synth;
  std::string gen_out = "out";
  std::string gen_file = "synthetic.csv";
  gen->add_option("--rows", synth.rows, "number of rows")->capture_default_str();
  gen->add_option("--fraud-fraction", synth.fraud_fraction, "probability a row is fraud")->capture_default_str();
  gen->add_option("--separation", synth.separation, "distance between class means")->capture_default_str();
  gen->add_option("--features", synth.features, "feature columns (Time, V1.., Amount)")->capture_default_str();
  gen->add_option("--seed", synth.seed, "generator seed")->capture_default_str();
  gen->add_option("--out", gen_out, "output directory")->capture_default_str();
  gen->add_option("--file", gen_file, "file name inside the output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    if (*gen) {
      fedfraud::Dataset ds;
      try {
        ds = fedfraud::generate_synthetic(synth);
      } catch (const fedfraud::DomainError& e) {
        std::cerr << "invalid generator parameters: " << e.what() << '\n';
        return kExitConfig;
      }
      std::filesystem::create_directories(gen_out);
      const auto path = std::filesystem::path(gen_out) / gen_file;
      fedfraud::write_csv(path, ds);
      std::cerr << "wrote " << ds.size() << " rows (" << ds.fraud_count() << " fraud) to "
                << path.string() << '\n';
      return kExitOk;
    }
    if (*bench) {
      const auto cfg = resolve(bench_flags);
      const auto report = fedfraud::run_benchmark(fedfraud::load_source(cfg), cfg);
      fedfraud::write_benchmark(cfg.out, report, cfg);
      std::cout << std::ifstream(cfg.out / "report.txt").rdbuf();
      announce(cfg.out, start);
    } else if (*sweep) {
      const auto cfg = resolve(sweep_flags);
      const auto report = fedfraud::run_sweep(fedfraud::load_source(cfg), cfg);
      fedfraud::write_sweep(cfg.out, report, cfg);
      std::cout << std::ifstream(cfg.out / "report.txt").rdbuf();
      announce(cfg.out, start);
    } else if (*fvc) {
      const auto cfg = resolve(fvc_flags);
      const auto report = fedfraud::run_fed_vs_central(fedfraud::load_source(cfg), cfg);
      fedfraud::write_fed_vs_central(cfg.out, report, cfg);
      std::cout << std::ifstream(cfg.out / "report.txt").rdbuf();
      announce(cfg.out, start);
    }
  } catch (const fedfraud::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kExitConfig;
  } catch (const fedfraud::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}
