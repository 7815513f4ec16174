#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fedfraud/data/dataset.hpp"
#include "fedfraud/numeric/activations.hpp"
#include "fedfraud/numeric/matrix.hpp"
#include "fedfraud/numeric/rng.hpp"

namespace fedfraud {

/// Trainable parameters of a feed-forward network with one sigmoid output.
///
/// Layer i maps size_i inputs to size_{i+1} outputs through a
/// (size_i x size_{i+1}) weight block and a 1 x size_{i+1} bias row. The flat
/// view lists, layer by layer, the weights in row-major order followed by
/// the biases; federated exchange works on that flat view.
struct MlpParams {
  std::vector<std::size_t> layer_sizes;
  Activation hidden_activation = Activation::relu;
  std::vector<Matrix> weights;
  std::vector<Matrix> biases;

  /// All-zero parameters for the given architecture.
  static MlpParams zeros(std::vector<std::size_t> layer_sizes,
                         Activation hidden_activation = Activation::relu);

  std::size_t layer_count() const noexcept { return weights.size(); }
  std::size_t input_dim() const noexcept { return layer_sizes.empty() ? 0 : layer_sizes.front(); }
  std::size_t parameter_count() const noexcept;

  std::vector<double> as_vector() const;
  /// Overwrites every weight and bias from `flat`; length must equal parameter_count().
  void assign_vector(std::span<const double> flat);
  static MlpParams from_vector(std::vector<std::size_t> layer_sizes, Activation hidden_activation,
                               std::span<const double> flat);

  void validate() const;

  bool operator==(const MlpParams&) const = default;
};

struct MlpHyperparams {
  std::vector<std::size_t> hidden_sizes{16, 8};
  Activation activation = Activation::relu;
  double learning_rate = 0.1;
  std::size_t batch_size = 32;
  std::size_t epochs = 30;
  /// Multiplier on the Glorot-uniform init bound.
  double init_scale = 1.0;
  /// Loss weight on fraud rows. 1.0 leaves the loss unweighted.
  double positive_weight = 1.0;

  /// Throws DomainError on eta <= 0, batch_size == 0, etc. Empty hidden sizes
  /// are only accepted when `allow_no_hidden` is set (logistic regression).
  void validate(bool allow_no_hidden = false) const;
};

/// Glorot-uniform weights bound by init_scale * sqrt(6 / (fan_in + fan_out)); zero biases.
MlpParams mlp_init(std::vector<std::size_t> layer_sizes, Activation hidden_activation,
                   double init_scale, Rng& rng);

/// Input-feature count followed by the hidden sizes and a single output unit.
std::vector<std::size_t> mlp_layer_sizes(std::size_t input_dim, const MlpHyperparams& hyper);

struct LayerCache {
  Matrix input;
  Matrix pre_activation;
};

struct ForwardPass {
  std::vector<double> probabilities;
  std::vector<LayerCache> caches;
};

/// z = h W + b per layer, hidden activation between layers, sigmoid on the output.
ForwardPass mlp_forward(const MlpParams& params, const Matrix& x);

/// Probabilities only; skips keeping the caches.
std::vector<double> mlp_predict(const MlpParams& params, const Matrix& x);

inline constexpr double kProbabilityClamp = 1e-12;

/// Mean binary cross-entropy with probabilities clamped to [eps, 1 - eps].
double mlp_loss(std::span<const double> probabilities, std::span<const int> labels,
                double positive_weight = 1.0);

/// Flat gradient of the mean loss and the number of rows it averages over.
struct GradientUpdate {
  std::vector<double> gradient;
  std::size_t sample_count = 0;
};

/// Reverse-mode gradient of mlp_loss with respect to every parameter, in flat order.
GradientUpdate mlp_backward(const MlpParams& params, const ForwardPass& forward,
                            std::span<const int> labels, double positive_weight = 1.0);

/// Forward and backward over the whole dataset.
GradientUpdate full_batch_gradient(const MlpParams& params, const Dataset& data,
                                   double positive_weight = 1.0);

/// params <- params - learning_rate * gradient.
void apply_gradient(MlpParams& params, std::span<const double> gradient, double learning_rate);

/// One pass over `data` in shuffled mini-batches, stepping after each batch.
/// Returns the sample-weighted mean of the batch losses (measured before each step).
double sgd_epoch(MlpParams& params, const Dataset& data, const MlpHyperparams& hyper, Rng& rng);

/// Mean loss of `params` over a whole dataset.
double dataset_loss(const MlpParams& params, const Dataset& data, double positive_weight = 1.0);

/// Stream that seeds parameter initialization for a run with the given master generator.
Rng init_stream(const Rng& master);
/// Per-party training stream. Centralized training uses party 1, so a single
/// federated client and a centralized run draw identical batches.
Rng party_stream(const Rng& master, std::size_t party_id);

}  // namespace fedfraud
