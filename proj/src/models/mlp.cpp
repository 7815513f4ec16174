#include "fedfraud/models/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fedfraud {

MlpParams MlpParams::zeros(std::vector<std::size_t> layer_sizes, Activation hidden_activation) {
  if (layer_sizes.size() < 2) throw DomainError("MlpParams: need at least input and output sizes");
  for (std::size_t s : layer_sizes) {
    if (s == 0) throw DomainError("MlpParams: layer sizes must be positive");
  }
  MlpParams p;
  p.hidden_activation = hidden_activation;
  for (std::size_t i = 0; i + 1 < layer_sizes.size(); ++i) {
    p.weights.emplace_back(layer_sizes[i], layer_sizes[i + 1]);
    p.biases.emplace_back(1, layer_sizes[i + 1]);
  }
  p.layer_sizes = std::move(layer_sizes);
  return p;
}

std::size_t MlpParams::parameter_count() const noexcept {
  std::size_t n = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) n += weights[i].size() + biases[i].size();
  return n;
}

std::vector<double> MlpParams::as_vector() const {
  std::vector<double> flat;
  flat.reserve(parameter_count());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    flat.insert(flat.end(), weights[i].values().begin(), weights[i].values().end());
    flat.insert(flat.end(), biases[i].values().begin(), biases[i].values().end());
  }
  return flat;
}

void MlpParams::assign_vector(std::span<const double> flat) {
  if (flat.size() != parameter_count()) {
    throw ShapeError("MlpParams: flat vector has " + std::to_string(flat.size()) +
                     " entries, model has " + std::to_string(parameter_count()));
  }
  auto it = flat.begin();
  for (std::size_t i = 0; i < weights.size(); ++i) {
    for (auto* block : {&weights[i], &biases[i]}) {
      auto dst = block->values();
      std::copy(it, it + static_cast<std::ptrdiff_t>(dst.size()), dst.begin());
      it += static_cast<std::ptrdiff_t>(dst.size());
    }
  }
}

MlpParams MlpParams::from_vector(std::vector<std::size_t> layer_sizes, Activation hidden_activation,
                                 std::span<const double> flat) {
  MlpParams p = zeros(std::move(layer_sizes), hidden_activation);
  p.assign_vector(flat);
  return p;
}

void MlpParams::validate() const {
  if (layer_sizes.size() < 2 || weights.size() != layer_sizes.size() - 1 ||
      biases.size() != weights.size()) {
    throw ShapeError("MlpParams: layer count does not match layer sizes");
  }
  if (layer_sizes.back() != 1) throw ShapeError("MlpParams: output layer must have one unit");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i].rows() != layer_sizes[i] || weights[i].cols() != layer_sizes[i + 1] ||
        biases[i].rows() != 1 || biases[i].cols() != layer_sizes[i + 1]) {
      throw ShapeError("MlpParams: layer " + std::to_string(i) + " weight " +
                       weights[i].shape_string() + " / bias " + biases[i].shape_string() +
                       " does not chain");
    }
  }
}

void MlpHyperparams::validate(bool allow_no_hidden) const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw DomainError("learning_rate must be positive");
  }
  if (batch_size == 0) throw DomainError("batch_size must be at least 1");
  if (!allow_no_hidden && hidden_sizes.empty()) throw DomainError("hidden_sizes must be nonempty");
  for (std::size_t h : hidden_sizes) {
    if (h == 0) throw DomainError("hidden_sizes entries must be positive");
  }
  if (!(init_scale > 0.0)) throw DomainError("init_scale must be positive");
  if (!(positive_weight > 0.0)) throw DomainError("positive_weight must be positive");
}

MlpParams mlp_init(std::vector<std::size_t> layer_sizes, Activation hidden_activation,
                   double init_scale, Rng& rng) {
  MlpParams p = MlpParams::zeros(std::move(layer_sizes), hidden_activation);
  for (auto& w : p.weights) {
    const double bound =
        init_scale * std::sqrt(6.0 / static_cast<double>(w.rows() + w.cols()));
    for (double& v : w.values()) v = rng.uniform(-bound, bound);
  }
  return p;
}

std::vector<std::size_t> mlp_layer_sizes(std::size_t input_dim, const MlpHyperparams& hyper) {
  std::vector<std::size_t> sizes{input_dim};
  sizes.insert(sizes.end(), hyper.hidden_sizes.begin(), hyper.hidden_sizes.end());
  sizes.push_back(1);
  return sizes;
}

ForwardPass mlp_forward(const MlpParams& params, const Matrix& x) {
  if (x.cols() != params.input_dim()) {
    throw ShapeError("mlp_forward: input " + x.shape_string() + " but network expects " +
                     std::to_string(params.input_dim()) + " features");
  }
  ForwardPass pass;
  pass.caches.reserve(params.layer_count());
  Matrix h = x;
  for (std::size_t l = 0; l < params.layer_count(); ++l) {
    Matrix z = add_row_broadcast(matmul(h, params.weights[l]), params.biases[l]);
    const bool last = l + 1 == params.layer_count();
    Matrix next = last ? sigmoid(z) : activate(params.hidden_activation, z);
    pass.caches.push_back({std::move(h), std::move(z)});
    h = std::move(next);
  }
  pass.probabilities.assign(h.values().begin(), h.values().end());
  return pass;
}

std::vector<double> mlp_predict(const MlpParams& params, const Matrix& x) {
  if (x.cols() != params.input_dim()) {
    throw ShapeError("mlp_predict: input " + x.shape_string() + " but network expects " +
                     std::to_string(params.input_dim()) + " features");
  }
  Matrix h = x;
  for (std::size_t l = 0; l < params.layer_count(); ++l) {
    Matrix z = add_row_broadcast(matmul(h, params.weights[l]), params.biases[l]);
    h = l + 1 == params.layer_count() ? sigmoid(z) : activate(params.hidden_activation, z);
  }
  return {h.values().begin(), h.values().end()};
}

double mlp_loss(std::span<const double> probabilities, std::span<const int> labels,
                double positive_weight) {
  if (probabilities.size() != labels.size()) {
    throw ShapeError("mlp_loss: " + std::to_string(probabilities.size()) + " probabilities for " +
                     std::to_string(labels.size()) + " labels");
  }
  if (labels.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double p = std::clamp(probabilities[i], kProbabilityClamp, 1.0 - kProbabilityClamp);
    total -= labels[i] == 1 ? positive_weight * std::log(p) : std::log(1.0 - p);
  }
  return total / static_cast<double>(labels.size());
}

GradientUpdate mlp_backward(const MlpParams& params, const ForwardPass& forward,
                            std::span<const int> labels, double positive_weight) {
  const std::size_t n = labels.size();
  if (forward.caches.size() != params.layer_count() || forward.probabilities.size() != n ||
      n == 0 || forward.caches.front().input.rows() != n) {
    throw ShapeError("mlp_backward: forward caches do not match parameters and labels");
  }

  // Sigmoid output with cross-entropy: dL/dz = w * (p - y) / n.
  Matrix delta(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = labels[i] == 1 ? positive_weight : 1.0;
    delta(i, 0) = w * (forward.probabilities[i] - labels[i]) / static_cast<double>(n);
  }

  std::vector<Matrix> grad_w(params.layer_count());
  std::vector<Matrix> grad_b(params.layer_count());
  for (std::size_t l = params.layer_count(); l-- > 0;) {
    const LayerCache& cache = forward.caches[l];
    if (cache.input.cols() != params.weights[l].rows() ||
        cache.pre_activation.cols() != params.weights[l].cols()) {
      throw ShapeError("mlp_backward: stale cache for layer " + std::to_string(l));
    }
    grad_w[l] = matmul(transpose(cache.input), delta);
    grad_b[l] = column_sums(delta);
    if (l > 0) {
      const Matrix& z_prev = forward.caches[l - 1].pre_activation;
      delta = mul(matmul(delta, transpose(params.weights[l])),
                  activate_derivative(params.hidden_activation, z_prev));
    }
  }

  GradientUpdate update;
  update.sample_count = n;
  update.gradient.reserve(params.parameter_count());
  for (std::size_t l = 0; l < params.layer_count(); ++l) {
    update.gradient.insert(update.gradient.end(), grad_w[l].values().begin(), grad_w[l].values().end());
    update.gradient.insert(update.gradient.end(), grad_b[l].values().begin(), grad_b[l].values().end());
  }
  return update;
}

GradientUpdate full_batch_gradient(const MlpParams& params, const Dataset& data,
                                   double positive_weight) {
  return mlp_backward(params, mlp_forward(params, data.features), data.labels, positive_weight);
}

void apply_gradient(MlpParams& params, std::span<const double> gradient, double learning_rate) {
  if (gradient.size() != params.parameter_count()) {
    throw ShapeError("apply_gradient: gradient length " + std::to_string(gradient.size()) +
                     " vs " + std::to_string(params.parameter_count()) + " parameters");
  }
  auto it = gradient.begin();
  for (std::size_t l = 0; l < params.layer_count(); ++l) {
    for (auto* block : {&params.weights[l], &params.biases[l]}) {
      for (double& v : block->values()) v -= learning_rate * *it++;
    }
  }
}

double sgd_epoch(MlpParams& params, const Dataset& data, const MlpHyperparams& hyper, Rng& rng) {
  if (data.empty()) throw DomainError("sgd_epoch: empty dataset");
  const auto order = rng_shuffle(rng, data.size());
  double loss_sum = 0.0;
  for (std::size_t start = 0; start < order.size(); start += hyper.batch_size) {
    const std::size_t stop = std::min(order.size(), start + hyper.batch_size);
    // Rows inside a batch are visited in source order; only batch membership is random.
    std::vector<std::size_t> batch(order.begin() + static_cast<std::ptrdiff_t>(start),
                                   order.begin() + static_cast<std::ptrdiff_t>(stop));
    std::sort(batch.begin(), batch.end());
    const Matrix x = data.features.select_rows(batch);
    std::vector<int> y(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) y[i] = data.labels[batch[i]];

    const ForwardPass pass = mlp_forward(params, x);
    loss_sum += mlp_loss(pass.probabilities, y, hyper.positive_weight) *
                static_cast<double>(batch.size());
    const GradientUpdate g = mlp_backward(params, pass, y, hyper.positive_weight);
    apply_gradient(params, g.gradient, hyper.learning_rate);
  }
  return loss_sum / static_cast<double>(data.size());
}

double dataset_loss(const MlpParams& params, const Dataset& data, double positive_weight) {
  return mlp_loss(mlp_predict(params, data.features), data.labels, positive_weight);
}

Rng init_stream(const Rng& master) { return master.split("init"); }

Rng party_stream(const Rng& master, std::size_t party_id) {
  return master.split("party").split(static_cast<std::uint64_t>(party_id));
}

}  // namespace fedfraud
