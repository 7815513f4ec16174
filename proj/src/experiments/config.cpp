#include "fedfraud/experiments/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace fedfraud {

using nlohmann::json;

namespace {

class Reader {
 public:
  Reader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  std::string field(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  bool has(const char* key) const { return node_.contains(key) && !node_.at(key).is_null(); }

  template <typename T>
  void get(const char* key, T& out) const {
    if (!has(key)) return;
    try {
      out = node_.at(key).get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(field(key), e.what());
    }
  }

  /// Reads a string through `parse`, reporting parse failures against this key.
  template <typename T, typename Parse>
  void get_parsed(const char* key, T& out, Parse parse) const {
    if (!has(key)) return;
    std::string text;
    get(key, text);
    try {
      out = parse(text);
    } catch (const std::logic_error& e) {
      throw ConfigError(field(key), e.what());
    }
  }

  Reader child(const char* key) const { return Reader(node_.at(key), field(key)); }

  void reject_unknown(std::initializer_list<const char*> known) const {
    const std::set<std::string> allowed(known.begin(), known.end());
    for (const auto& item : node_.items()) {
      if (!allowed.contains(item.key())) throw ConfigError(field(item.key()), "unknown key");
    }
  }

 private:
  const json& node_;
  std::string path_;
};

void read_mlp(const Reader& r, MlpHyperparams& hyper, bool network) {
  if (network) {
    r.reject_unknown({"hidden_sizes", "activation", "learning_rate", "batch_size", "init_scale",
                      "positive_weight"});
    r.get("hidden_sizes", hyper.hidden_sizes);
    r.get_parsed("activation", hyper.activation, parse_activation);
  } else {
    r.reject_unknown({"learning_rate", "batch_size", "epochs", "init_scale", "positive_weight"});
    r.get("epochs", hyper.epochs);
  }
  r.get("learning_rate", hyper.learning_rate);
  r.get("batch_size", hyper.batch_size);
  r.get("init_scale", hyper.init_scale);
  r.get("positive_weight", hyper.positive_weight);
}

json mlp_json(const MlpHyperparams& h, bool network) {
  json j;
  if (network) {
    j["hidden_sizes"] = h.hidden_sizes;
    j["activation"] = std::string(to_string(h.activation));
  } else {
    j["epochs"] = h.epochs;
  }
  j["learning_rate"] = h.learning_rate;
  j["batch_size"] = h.batch_size;
  j["init_scale"] = h.init_scale;
  j["positive_weight"] = h.positive_weight;
  return j;
}

template <typename Fn>
// Validators start their messages with the offending key ("rounds must be
// at least 1"), which becomes the last part of the field path.
void check(const std::string& section, Fn&& fn) {
  try {
    fn();
  } catch (const std::logic_error& e) {
    const std::string what = e.what();
    const auto space = what.find(' ');
    const std::string key = what.substr(0, space);
    const bool is_key = space != std::string::npos && !key.empty() &&
                        std::all_of(key.begin(), key.end(), [](unsigned char c) { return std::islower(c) || c == '_'; });
    if (is_key) throw ConfigError(section + "." + key, what.substr(space + 1));
    throw ConfigError(section, what);
  }
}

}  // namespace

ConfigError::ConfigError(std::string field, const std::string& detail)
    : std::runtime_error("config error at '" + field + "': " + detail), field_(std::move(field)) {}

ModelKind parse_model_kind(std::string_view name) {
  if (name == "logistic" || name == "lr") return ModelKind::logistic;
  if (name == "tree" || name == "dt") return ModelKind::tree;
  if (name == "mlp_central") return ModelKind::mlp_central;
  if (name == "mlp_federated") return ModelKind::mlp_federated;
  throw DomainError("unknown model '" + std::string(name) + "'");
}

std::string_view to_string(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::logistic: return "logistic";
    case ModelKind::tree: return "tree";
    case ModelKind::mlp_central: return "mlp_central";
    case ModelKind::mlp_federated: return "mlp_federated";
  }
  return "unknown";
}

void ExperimentConfig::validate() const {
  if (data.csv) {
    if (!std::filesystem::exists(*data.csv)) {
      throw ConfigError("data.csv", "file '" + data.csv->string() + "' does not exist");
    }
  } else {
    const auto& s = data.synthetic;
    if (s.rows == 0) throw ConfigError("data.synthetic.rows", "must be positive");
    if (s.features < 3) throw ConfigError("data.synthetic.features", "must be at least 3");
    if (!(s.fraud_fraction >= 0.0 && s.fraud_fraction <= 1.0)) {
      throw ConfigError("data.synthetic.fraud_fraction", "must lie in [0, 1]");
    }
    if (!(s.separation >= 0.0)) throw ConfigError("data.synthetic.separation", "must be >= 0");
  }
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ConfigError("split.test_fraction", "must lie in (0, 1)");
  }
  if (!(threshold >= 0.0 && threshold <= 1.0)) throw ConfigError("threshold", "must lie in [0, 1]");
  if (repetitions == 0) throw ConfigError("repetitions", "must be at least 1");
  check("mlp", [&] { mlp.validate(); });
  check("logistic", [&] { logistic.validate(true); });
  if (tree.min_samples_leaf == 0) throw ConfigError("tree.min_samples_leaf", "must be at least 1");
  check("federated", [&] { fed_config(seed).validate(); });
  if (!(partition.dirichlet_alpha > 0.0)) {
    throw ConfigError("federated.partition.dirichlet_alpha", "must be positive");
  }
  if (!(partition.fraud_concentration >= 0.0 && partition.fraud_concentration <= 1.0)) {
    throw ConfigError("federated.partition.fraud_concentration", "must lie in [0, 1]");
  }
  if (sweep.sample_counts.empty()) throw ConfigError("sweep.sample_counts", "must be nonempty");
  for (std::size_t s : sweep.sample_counts) {
    if (s == 0) throw ConfigError("sweep.sample_counts", "entries must be positive");
  }
  if (sweep.ratios.empty()) throw ConfigError("sweep.ratios", "must be nonempty");
  if (sweep.repetitions == 0) throw ConfigError("sweep.repetitions", "must be at least 1");
}

FedConfig ExperimentConfig::fed_config(std::uint64_t run_seed) const {
  FedConfig f = federated;
  f.client = mlp;
  f.client.epochs = federated.rounds * federated.local_epochs;
  f.seed = run_seed;
  f.threads = threads;
  f.threshold = threshold;
  return f;
}

ExperimentConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", e.what());
  }

  ExperimentConfig cfg;
  const Reader r(root, "");
  r.reject_unknown({"seed", "data", "split", "resample", "threshold", "repetitions", "mlp",
                    "logistic", "tree", "federated", "sweep", "threads", "out"});
  r.get("seed", cfg.seed);
  r.get("threshold", cfg.threshold);
  r.get("repetitions", cfg.repetitions);
  r.get("threads", cfg.threads);
  if (r.has("out")) {
    std::string out;
    r.get("out", out);
    cfg.out = out;
  }
  if (root.contains("resample")) {
    if (root["resample"].is_null()) {
      cfg.resample.reset();
    } else {
      SamplingRatio ratio;
      r.get_parsed("resample", ratio, SamplingRatio::parse);
      cfg.resample = ratio;
    }
  }

  if (r.has("data")) {
    const Reader d = r.child("data");
    d.reject_unknown({"csv", "label_column", "feature_columns", "synthetic"});
    if (d.has("csv")) {
      std::string path;
      d.get("csv", path);
      cfg.data.csv = path;
    }
    d.get("label_column", cfg.data.schema.label_column);
    d.get("feature_columns", cfg.data.schema.feature_columns);
    if (d.has("synthetic")) {
      const Reader s = d.child("synthetic");
      s.reject_unknown({"rows", "fraud_fraction", "separation", "features", "seed"});
      s.get("rows", cfg.data.synthetic.rows);
      s.get("fraud_fraction", cfg.data.synthetic.fraud_fraction);
      s.get("separation", cfg.data.synthetic.separation);
      s.get("features", cfg.data.synthetic.features);
      s.get("seed", cfg.data.synthetic.seed);
    }
  }
  if (r.has("split")) {
    const Reader s = r.child("split");
    s.reject_unknown({"test_fraction"});
    s.get("test_fraction", cfg.test_fraction);
  }
  if (r.has("mlp")) read_mlp(r.child("mlp"), cfg.mlp, true);
  if (r.has("logistic")) read_mlp(r.child("logistic"), cfg.logistic, false);
  if (r.has("tree")) {
    const Reader t = r.child("tree");
    t.reject_unknown({"max_depth", "min_samples_leaf"});
    t.get("max_depth", cfg.tree.max_depth);
    t.get("min_samples_leaf", cfg.tree.min_samples_leaf);
  }
  if (r.has("federated")) {
    const Reader f = r.child("federated");
    f.reject_unknown({"clients", "rounds", "local_epochs", "participation", "aggregation", "partition"});
    f.get("clients", cfg.federated.clients);
    f.get("rounds", cfg.federated.rounds);
    f.get("local_epochs", cfg.federated.local_epochs);
    f.get("participation", cfg.federated.participation);
    f.get_parsed("aggregation", cfg.federated.mode, parse_aggregation_mode);
    if (f.has("partition")) {
      const Reader p = f.child("partition");
      p.reject_unknown({"scheme", "dirichlet_alpha", "fraud_concentration"});
      p.get_parsed("scheme", cfg.partition.kind, parse_partition_kind);
      p.get("dirichlet_alpha", cfg.partition.dirichlet_alpha);
      p.get("fraud_concentration", cfg.partition.fraud_concentration);
    }
  }
  if (r.has("sweep")) {
    const Reader s = r.child("sweep");
    s.reject_unknown({"sample_counts", "ratios", "repetitions", "model", "sample_count_basis"});
    s.get("sample_counts", cfg.sweep.sample_counts);
    s.get("repetitions", cfg.sweep.repetitions);
    s.get_parsed("model", cfg.sweep.model, parse_model_kind);
    s.get_parsed("sample_count_basis", cfg.sweep.basis, [](const std::string& v) {
      if (v == "resampled") return SampleCountBasis::resampled;
      if (v == "pool") return SampleCountBasis::pool;
      throw DomainError("expected 'resampled' or 'pool'");
    });
    if (s.has("ratios")) {
      std::vector<std::string> ratios;
      s.get("ratios", ratios);
      cfg.sweep.ratios.clear();
      for (const auto& text : ratios) {
        try {
          cfg.sweep.ratios.push_back(SamplingRatio::parse(text));
        } catch (const std::logic_error& e) {
          throw ConfigError(s.field("ratios"), e.what());
        }
      }
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string config_echo(const ExperimentConfig& cfg) {
  json j;
  j["seed"] = cfg.seed;
  json data;
  data["csv"] = cfg.data.csv ? json(cfg.data.csv->generic_string()) : json(nullptr);
  data["label_column"] = cfg.data.schema.label_column;
  data["feature_columns"] = cfg.data.schema.feature_columns;
  if (!cfg.data.csv) {
    data["synthetic"] = {{"rows", cfg.data.synthetic.rows},
                         {"fraud_fraction", cfg.data.synthetic.fraud_fraction},
                         {"separation", cfg.data.synthetic.separation},
                         {"features", cfg.data.synthetic.features},
                         {"seed", cfg.data.synthetic.seed}};
  }
  j["data"] = data;
  j["split"] = {{"test_fraction", cfg.test_fraction}};
  j["resample"] = cfg.resample ? json(cfg.resample->to_string()) : json(nullptr);
  j["threshold"] = cfg.threshold;
  j["repetitions"] = cfg.repetitions;
  j["mlp"] = mlp_json(cfg.mlp, true);
  j["logistic"] = mlp_json(cfg.logistic, false);
  j["tree"] = {{"max_depth", cfg.tree.max_depth}, {"min_samples_leaf", cfg.tree.min_samples_leaf}};
  j["federated"] = {
      {"clients", cfg.federated.clients},
      {"rounds", cfg.federated.rounds},
      {"local_epochs", cfg.federated.local_epochs},
      {"participation", cfg.federated.participation},
      {"aggregation", std::string(to_string(cfg.federated.mode))},
      {"partition",
       {{"scheme", std::string(to_string(cfg.partition.kind))},
        {"dirichlet_alpha", cfg.partition.dirichlet_alpha},
        {"fraud_concentration", cfg.partition.fraud_concentration}}}};
  std::vector<std::string> ratios;
  for (const auto& r : cfg.sweep.ratios) ratios.push_back(r.to_string());
  j["sweep"] = {{"sample_counts", cfg.sweep.sample_counts},
                {"ratios", ratios},
                {"repetitions", cfg.sweep.repetitions},
                {"model", std::string(to_string(cfg.sweep.model))},
                {"sample_count_basis",
                 cfg.sweep.basis == SampleCountBasis::resampled ? "resampled" : "pool"}};
  return j.dump(2) + "\n";
}

}  // namespace fedfraud
