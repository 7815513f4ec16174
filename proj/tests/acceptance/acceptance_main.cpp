// Acceptance runner: one [PASS], [FAIL] or [SKIP] line per criterion.
//
// Usage: fedfraud_acceptance [--only N] [--work DIR]
// The ULB criteria read FEDFRAUD_ULB_CSV, falling back to data/creditcard.csv
// under the source tree. Exit status is 1 when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include "fedfraud/data/partition.hpp"
#include "fedfraud/data/preprocess.hpp"
#include "fedfraud/data/synthetic.hpp"
#include "fedfraud/diagnostics.hpp"
#include "fedfraud/experiments/config.hpp"
#include "fedfraud/experiments/runner.hpp"
#include "fedfraud/federated/aggregator.hpp"
#include "fedfraud/federated/client.hpp"
#include "fedfraud/federated/trainer.hpp"
#include "fedfraud/metrics/metrics.hpp"
#include "fedfraud/models/mlp.hpp"
#include "oracles.hpp"
#include "properties.hpp"

namespace fs = std::filesystem;
using namespace fedfraud;

namespace {

// Pinned tolerances.
constexpr double kGradientRelTol = 1e-5;
constexpr double kGradientStep = 1e-5;
constexpr double kKinkMargin = 1e-3;
constexpr double kFedSgdAbsTol = 1e-12;
constexpr double kF1HandTol = 0.001;
constexpr double kPrintedRounding = 0.005;
constexpr double kUlbMinAuc = 0.78;
constexpr double kUlbMinF1 = 0.70;
constexpr double kSweepSlack = 0.01;
constexpr double kFedCentralMaxDelta = 0.03;
constexpr std::size_t kPropertyCases = 100;

// Runtime limits in seconds; 0 means none.
constexpr double kLimit[] = {0, 10, 5, 5, 0, 300, 900, 60, 0, 0, 0};

enum class Status { pass, fail, skip };

struct Verdict {
  Status status;
  std::string detail;
};

Verdict pass(std::string d) { return {Status::pass, std::move(d)}; }
Verdict fail(std::string d) { return {Status::fail, std::move(d)}; }
Verdict skip(std::string d) { return {Status::skip, std::move(d)}; }

std::string fmt(double v, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

struct Context {
  fs::path work;
  std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
};

Matrix uniform_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (double& v : m.values()) v = rng.uniform(-2.0, 2.0);
  return m;
}

Dataset standardized_synthetic(std::size_t rows, double fraud_fraction, std::size_t features,
                               std::uint64_t seed) {
  const Dataset raw = generate_synthetic({rows, fraud_fraction, 3.0, features, seed});
  return apply_standardizer(fit_standardizer(raw), raw);
}

// 1
Verdict gradient_correctness(const Context&) {
  Rng rng(20240101);
  double worst = 0.0;
  std::size_t redraws = 0;
  for (std::size_t net = 0; net < 50;) {
    std::vector<std::size_t> sizes{1 + rng.index(5)};
    const std::size_t hidden = rng.index(3);
    for (std::size_t h = 0; h < hidden; ++h) sizes.push_back(1 + rng.index(5));
    sizes.push_back(1);
    const auto act = rng.bernoulli(0.5) ? Activation::relu : Activation::sigmoid;
    const MlpParams p = oracle::random_network(sizes, act, rng);
    const std::size_t batch = 1 + rng.index(8);
    const Matrix x = uniform_matrix(rng, batch, sizes.front());
    if (oracle::near_relu_kink(p, x, kKinkMargin)) {
      ++redraws;
      continue;
    }
    std::vector<int> y(batch);
    for (int& v : y) v = rng.bernoulli(0.5) ? 1 : 0;
    worst = std::max(worst, oracle::max_gradient_gap(p, x, y, kGradientStep));
    ++net;
  }
  const std::string detail = "50 nets, worst relative gap " + fmt(worst, 3) + " (" +
                             std::to_string(redraws) + " redrawn near a ReLU kink)";
  return worst <= kGradientRelTol ? pass(detail) : fail(detail);
}

// 2
Verdict fedsgd_equivalence(const Context&) {
  const Dataset ds = standardized_synthetic(157, 0.3, 6, 11);
  Rng rng(2);
  double worst = 0.0;
  std::size_t runs = 0;
  for (std::size_t k = 1; k <= 5; ++k) {
    for (std::size_t trial = 0; trial < 4; ++trial) {
      FedConfig cfg;
      cfg.clients = k;
      cfg.rounds = 1;
      cfg.participation = 1.0;
      cfg.mode = AggregationMode::fedsgd_gradients;
      cfg.client.hidden_sizes = {1 + rng.index(6)};
      cfg.client.learning_rate = rng.uniform(0.01, 1.0);
      cfg.seed = 100 * k + trial;
      PartitionScheme scheme;
      scheme.kind = static_cast<PartitionKind>(rng.index(3));
      scheme.dirichlet_alpha = rng.uniform(0.1, 2.0);
      Rng prng = rng.split(runs);
      FederatedTrainer trainer(partition(ds, k, scheme, prng), cfg);
      const auto start = trainer.global_params().as_vector();
      const auto g = full_batch_gradient(trainer.global_params(), ds).gradient;
      trainer.run_round(0);
      const auto got = trainer.global_params().as_vector();
      for (std::size_t i = 0; i < got.size(); ++i) {
        worst = std::max(worst, std::abs(got[i] - (start[i] - cfg.client.learning_rate * g[i])));
      }
      ++runs;
    }
  }
  const std::string detail = std::to_string(runs) + " partitions over K=1..5, max |diff| " + fmt(worst, 3);
  return worst <= kFedSgdAbsTol ? pass(detail) : fail(detail);
}

// 3
Verdict auc_oracle(const Context&) {
  Rng rng(3);
  std::size_t mismatches = 0;
  std::size_t tied = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.index(11);
    std::vector<double> s(n);
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = static_cast<double>(rng.index(5)) / 4.0;
      y[i] = rng.bernoulli(0.5) ? 1 : 0;
    }
    const std::size_t pos = rng.index(n);
    y[pos] = 1;
    y[(pos + 1 + rng.index(n - 1)) % n] = 0;
    if (std::set<double>(s.begin(), s.end()).size() < n) ++tied;
    if (auc(s, y) != oracle::pairwise_auc(s, y)) ++mismatches;
  }
  const std::string detail = "200 instances (" + std::to_string(tied) + " with ties), " +
                             std::to_string(mismatches) + " mismatches";
  return mismatches == 0 ? pass(detail) : fail(detail);
}

// 4
Verdict metric_formulas(const Context&) {
  std::vector<std::string> broken;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) broken.push_back(what);
  };
  expect(accuracy({2, 1, 0, 3}) == 5.0 / 6.0, "Acc(2,1,0,3) != 5/6");
  expect(precision({8, 2, 0, 0}).value == 0.8, "precision(8,2,0,0) != 0.8");
  expect(recall({6, 0, 4, 0}).value == 0.6, "recall(6,0,4,0) != 0.6");
  expect(f1(ConfusionMatrix{3, 1, 1, 5}).value == 0.75, "F1(3,1,1,5) != 0.75");
  expect(std::abs(f1(0.77, 0.77).value - 0.77) < 1e-15, "F1(0.77,0.77) != 0.77");

  const double ours = f1(0.89, 0.68).value;
  expect(std::abs(ours - 0.771) <= kF1HandTol, "F1(0.89,0.68) = " + fmt(ours) + ", expected 0.771");
  expect(std::abs(ours - 0.77) < kPrintedRounding, "F1(0.89,0.68) does not round to printed 0.77");

  // The DT row is checked as inconsistent: its printed F1 cannot come from its printed PR and RE.
  const double dt = f1(0.85, 0.57).value;
  const bool dt_inconsistent =
      std::abs(dt - 0.682) <= kF1HandTol && std::abs(dt - 0.70) > kPrintedRounding &&
      f1(0.855, 0.575).value < 0.70 - kPrintedRounding;
  expect(dt_inconsistent, "DT row F1(0.85,0.57) = " + fmt(dt) + " unexpectedly matches 0.70");

  if (!broken.empty()) {
    std::string d;
    for (const auto& b : broken) d += (d.empty() ? "" : "; ") + b;
    return fail(d);
  }
  return pass("Acc=5/6 exact, F1(0.89,0.68)=" + fmt(ours) + ", DT row F1(0.85,0.57)=" + fmt(dt) +
              " vs printed 0.70 (inconsistent, as documented)");
}

std::optional<fs::path> ulb_csv() {
  if (const char* env = std::getenv("FEDFRAUD_ULB_CSV"); env && *env) {
    if (fs::exists(env)) return fs::path(env);
    return std::nullopt;
  }
  const fs::path fallback = fs::path(FEDFRAUD_SOURCE_DIR) / "data" / "creditcard.csv";
  if (fs::exists(fallback)) return fallback;
  return std::nullopt;
}

constexpr const char* kUlbMissing =
    "ULB creditcard.csv not found (set FEDFRAUD_ULB_CSV or place it at data/creditcard.csv)";

const ModelRow* find_row(const std::vector<ModelRow>& rows, const std::string& name) {
  for (const auto& r : rows)
    if (r.model == name) return &r;
  return nullptr;
}

// 5
Verdict table_reproduction(const Context& ctx) {
  const auto csv = ulb_csv();
  if (!csv) return skip(kUlbMissing);
  ExperimentConfig cfg;
  cfg.data.csv = *csv;
  cfg.resample = SamplingRatio{1, 1};
  cfg.test_fraction = 0.2;
  cfg.repetitions = 5;
  cfg.threads = ctx.threads;
  const Dataset full = load_source(cfg);
  const auto report = run_benchmark(full, cfg);
  const ModelRow* fed = find_row(report.summary, "MLP-fed");
  const ModelRow* lr = find_row(report.summary, "LR");
  const ModelRow* dt = find_row(report.summary, "DT");
  if (!fed || !lr || !dt) return fail("benchmark report lacks a model row");
  const std::string detail = "AUC fed " + fmt(fed->auc) + ", LR " + fmt(lr->auc) + ", DT " +
                             fmt(dt->auc) + "; fed F1 " + fmt(fed->f1);
  const bool ok = fed->auc > lr->auc && lr->auc > dt->auc && fed->auc >= kUlbMinAuc && fed->f1 >= kUlbMinF1;
  return ok ? pass(detail) : fail(detail);
}

// 6
Verdict sweep_shape(const Context& ctx) {
  const auto csv = ulb_csv();
  if (!csv) return skip(kUlbMissing);
  ExperimentConfig cfg;
  cfg.data.csv = *csv;
  cfg.sweep.repetitions = 5;
  cfg.sweep.ratios = {{1, 1}, {1, 100}};
  cfg.threads = ctx.threads;
  ScopedWarningCapture quiet;
  const Dataset full = load_source(cfg);
  const auto report = run_sweep(full, cfg);

  auto curve = [&](SamplingRatio ratio) {
    std::vector<std::pair<std::size_t, double>> points;
    for (const auto& s : report.summary)
      if (s.ratio == ratio && s.runs > 0) points.emplace_back(s.sample_count, s.mean_auc);
    return points;
  };
  const auto one = curve({1, 1});
  const auto hundred = curve({1, 100});
  if (one.empty() || hundred.empty()) return fail("sweep produced no rows for a ratio");

  std::string detail;
  bool ok = true;
  for (const auto* c : {&one, &hundred}) {
    std::size_t drops = 0;
    double worst = 0.0;
    for (std::size_t i = 1; i < c->size(); ++i) {
      const double drop = (*c)[i - 1].second - (*c)[i].second;
      if (drop > 0) {
        ++drops;
        worst = std::max(worst, drop);
      }
    }
    if (drops > 1 || worst > kSweepSlack) ok = false;
    detail += (c == &one ? "1:1" : "1:100") + std::string(" drops ") + std::to_string(drops) +
              " (max " + fmt(worst, 3) + "); ";
  }
  const std::size_t smallest = cfg.sweep.sample_counts.front();
  const std::size_t largest = cfg.sweep.sample_counts.back();
  auto at = [](const std::vector<std::pair<std::size_t, double>>& c, std::size_t n) -> std::optional<double> {
    for (const auto& [count, value] : c)
      if (count == n) return value;
    return std::nullopt;
  };
  const auto s1 = at(one, smallest);
  const auto s100 = at(hundred, smallest);
  const auto l1 = at(one, largest);
  const auto l100 = at(hundred, largest);
  if (!s1 || !s100 || !l1 || !l100) return fail(detail + "an end point of the grid was skipped");
  if (!(*s1 > *s100)) ok = false;
  if (!(*l100 >= *l1 - kSweepSlack)) ok = false;
  detail += "n=" + std::to_string(smallest) + ": " + fmt(*s1) + " vs " + fmt(*s100) + "; n=" +
            std::to_string(largest) + ": " + fmt(*l1) + " vs " + fmt(*l100);
  return ok ? pass(detail) : fail(detail);
}

// 7
Verdict fed_matches_central(const Context& ctx) {
  ExperimentConfig cfg;
  cfg.data.synthetic = {20000, 0.05, 3.0, 30, 1};
  cfg.resample = SamplingRatio{1, 1};
  cfg.repetitions = 3;
  cfg.federated.clients = 5;
  cfg.federated.participation = 1.0;
  cfg.partition.kind = PartitionKind::iid;
  cfg.threads = ctx.threads;
  const Dataset full = load_source(cfg);
  const auto report = run_fed_vs_central(full, cfg);
  const std::string detail = "AUC central " + fmt(report.central.auc) + ", federated " +
                             fmt(report.federated.auc) + ", mean |delta| " + fmt(report.auc_delta, 3);
  return report.auc_delta <= kFedCentralMaxDelta ? pass(detail) : fail(detail);
}

// 8
std::string read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::optional<std::string> compare_dirs(const fs::path& a, const fs::path& b) {
  std::set<std::string> names_a;
  std::set<std::string> names_b;
  for (const auto& e : fs::directory_iterator(a)) names_a.insert(e.path().filename().string());
  for (const auto& e : fs::directory_iterator(b)) names_b.insert(e.path().filename().string());
  if (names_a.empty()) return a.string() + " is empty";
  if (names_a != names_b) return "file sets differ between " + a.string() + " and " + b.string();
  for (const auto& name : names_a) {
    if (read_bytes(a / name) != read_bytes(b / name)) return name + " differs between " + a.string() + " and " + b.string();
  }
  return std::nullopt;
}

int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd = "\"" FEDFRAUD_CLI_PATH "\" " + args + " > \"" + log.string() + "\" 2>&1";
  return std::system(cmd.c_str());
}

Verdict cli_determinism(const Context& ctx) {
  const fs::path root = ctx.work / "determinism";
  fs::remove_all(root);
  fs::create_directories(root);
  const fs::path log = root / "cli.log";

  const std::string gen = "gen-synthetic --rows 4000 --fraud-fraction 0.05 --features 8 --seed 13 --out ";
  if (run_cli(gen + "\"" + (root / "gen_a").string() + "\"", log) != 0 ||
      run_cli(gen + "\"" + (root / "gen_b").string() + "\"", log) != 0) {
    return fail("gen-synthetic failed: " + read_bytes(log));
  }
  if (auto diff = compare_dirs(root / "gen_a", root / "gen_b")) return fail(*diff);
  fs::path csv;
  for (const auto& e : fs::directory_iterator(root / "gen_a")) csv = e.path();

  const fs::path config = root / "config.json";
  std::ofstream(config) << R"({
  "seed": 21,
  "repetitions": 2,
  "mlp": {"hidden_sizes": [8]},
  "logistic": {"epochs": 5},
  "federated": {"clients": 4, "rounds": 5, "participation": 0.5},
  "sweep": {"sample_counts": [100, 200, 400], "repetitions": 2}
})";

  std::size_t compared = 0;
  for (const std::string sub : {"benchmark", "sweep-sampling", "fed-vs-central"}) {
    const std::string base = sub + " --config \"" + config.string() + "\" --data \"" + csv.string() + "\"";
    const fs::path a = root / (sub + "_t1_a");
    const fs::path b = root / (sub + "_t1_b");
    const fs::path c = root / (sub + "_t4");
    if (run_cli(base + " --threads 1 --out \"" + a.string() + "\"", log) != 0 ||
        run_cli(base + " --threads 1 --out \"" + b.string() + "\"", log) != 0 ||
        run_cli(base + " --threads 4 --out \"" + c.string() + "\"", log) != 0) {
      return fail(sub + " failed: " + read_bytes(log));
    }
    if (auto diff = compare_dirs(a, b)) return fail(*diff);
    if (auto diff = compare_dirs(a, c)) return fail(*diff);
    compared += static_cast<std::size_t>(std::distance(fs::directory_iterator(a), fs::directory_iterator{}));
  }
  return pass("gen-synthetic plus " + std::to_string(compared) +
              " report files identical across reruns and threads 1/4");
}

// 9
static_assert(std::is_same_v<decltype(&aggregate), std::vector<double> (*)(std::span<const Contribution>)>);
static_assert(std::is_same_v<decltype(&aggregation_weights),
                             std::vector<double> (*)(std::span<const Contribution>)>);
static_assert(std::is_aggregate_v<Contribution>);
static_assert(sizeof(Contribution) == sizeof(std::vector<double>) + sizeof(std::size_t));
static_assert(!std::is_constructible_v<Contribution, ClientShard>);
static_assert(!std::is_constructible_v<Contribution, Dataset>);
static_assert(!std::is_constructible_v<Contribution, ClientState>);

Verdict privacy_boundary(const Context&) {
  const fs::path src = FEDFRAUD_SOURCE_DIR;
  const std::regex include_re(R"re(#\s*include\s*"(fedfraud/[^"]+)")re");
  const std::regex forbidden_re(R"(fedfraud/(data/|models/|experiments/|federated/(client|trainer)))");
  std::vector<fs::path> queue{src / "include/fedfraud/federated/aggregator.hpp",
                              src / "src/federated/aggregator.cpp"};
  std::set<std::string> seen;
  while (!queue.empty()) {
    const fs::path file = queue.back();
    queue.pop_back();
    if (!fs::exists(file)) return fail("missing " + file.string());
    std::istringstream text(read_bytes(file));
    for (std::string line; std::getline(text, line);) {
      std::smatch m;
      if (!std::regex_search(line, m, include_re)) continue;
      const std::string header = m[1];
      if (std::regex_search(header, forbidden_re)) {
        return fail(file.filename().string() + " reaches " + header);
      }
      if (seen.insert(header).second) queue.push_back(src / "include" / header);
    }
  }
  return pass("aggregate takes span<const Contribution{values, sample_count}>; " +
              std::to_string(seen.size()) + " transitively included headers, none from data/models/client");
}

// 10
Verdict property_suites(const Context&) {
  const std::pair<const char*, property::Outcome> suites[] = {
      {"partition", property::partition_conservation(1001, kPropertyCases)},
      {"resampling", property::resampling_preserves_fraud(1002, kPropertyCases)},
      {"checkpoint", property::checkpoint_round_trip(1003, kPropertyCases)},
      {"auc-monotone", property::auc_monotone_invariance(1004, kPropertyCases)}};
  std::string detail;
  bool ok = true;
  for (const auto& [name, r] : suites) {
    detail += std::string(detail.empty() ? "" : ", ") + name + " " +
              std::to_string(r.cases - r.failures) + "/" + std::to_string(r.cases);
    if (!r.passed()) {
      ok = false;
      detail += " (" + r.first_failure + ")";
    }
  }
  return ok ? pass(detail) : fail(detail);
}

struct Criterion {
  int id;
  const char* name;
  std::function<Verdict(const Context&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  Context ctx;
  ctx.work = fs::current_path() / "acceptance_work";
  std::optional<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only = std::stoi(argv[++i]);
    } else if (arg == "--work" && i + 1 < argc) {
      ctx.work = argv[++i];
    } else {
      std::cerr << "usage: fedfraud_acceptance [--only N] [--work DIR]\n";
      return 2;
    }
  }
  fs::create_directories(ctx.work);

  const std::vector<Criterion> criteria{
      {1, "gradient correctness", gradient_correctness},
      {2, "FedSGD equals centralized step", fedsgd_equivalence},
      {3, "AUC equals pairwise oracle", auc_oracle},
      {4, "metric formulas", metric_formulas},
      {5, "ULB benchmark ordering and floors", table_reproduction},
      {6, "ULB sampling-ratio sweep shape", sweep_shape},
      {7, "federated close to centralized", fed_matches_central},
      {8, "CLI determinism", cli_determinism},
      {9, "privacy boundary", privacy_boundary},
      {10, "property suites", property_suites},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (only && *only != c.id) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v = [&] {
      try {
        return c.run(ctx);
      } catch (const std::exception& e) {
        return fail(std::string("threw: ") + e.what());
      }
    }();
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double limit = kLimit[c.id];
    if (v.status == Status::pass && limit > 0 && seconds > limit) {
      v = fail(v.detail + "; took " + fmt(seconds, 3) + " s, limit " + fmt(limit) + " s");
    }
    const char* tag = v.status == Status::pass ? "[PASS]" : v.status == Status::fail ? "[FAIL]" : "[SKIP]";
    if (v.status == Status::fail) ++failures;
    std::cout << tag << ' ' << c.id << ". " << c.name << " (" << fmt(seconds, 3) << " s): " << v.detail
              << std::endl;
  }
  std::cout << (failures == 0 ? "acceptance: no failures" : "acceptance: " + std::to_string(failures) + " failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
