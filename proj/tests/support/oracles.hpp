#pragma once

// Reference implementations used only by tests. Each one follows the
// textbook definition directly and shares no code with the library path it
// checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fedfraud/models/mlp.hpp"
#include "fedfraud/numeric/matrix.hpp"
#include "fedfraud/numeric/rng.hpp"

namespace fedfraud::oracle {

inline Matrix naive_matmul(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double sum = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) sum += a(i, k) * b(k, j);
      out(i, j) = sum;
    }
  }
  return out;
}

inline double scalar_sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

/// Forward pass computed one neuron at a time.
inline std::vector<double> neuron_forward(const MlpParams& p, const Matrix& x) {
  std::vector<double> out(x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    std::vector<double> h(x.row(r).begin(), x.row(r).end());
    for (std::size_t l = 0; l < p.weights.size(); ++l) {
      const bool last = l + 1 == p.weights.size();
      std::vector<double> next(p.weights[l].cols());
      for (std::size_t j = 0; j < next.size(); ++j) {
        double z = p.biases[l](0, j);
        for (std::size_t i = 0; i < h.size(); ++i) z += h[i] * p.weights[l](i, j);
        if (last || p.hidden_activation == Activation::sigmoid) {
          next[j] = scalar_sigmoid(z);
        } else {
          next[j] = z > 0.0 ? z : 0.0;
        }
      }
      h = std::move(next);
    }
    out[r] = h[0];
  }
  return out;
}

/// Unclamped mean binary cross-entropy from the neuron-level forward pass.
inline double reference_loss(const MlpParams& p, const Matrix& x, std::span<const int> y) {
  const auto probs = neuron_forward(p, x);
  double total = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    total -= y[i] == 1 ? std::log(probs[i]) : std::log(1.0 - probs[i]);
  }
  return total / static_cast<double>(y.size());
}

/// Central differences of `loss` around `theta`.
inline std::vector<double> finite_difference_gradient(
    const std::vector<double>& theta, const std::function<double(const std::vector<double>&)>& loss,
    double step = 1e-5) {
  std::vector<double> grad(theta.size());
  std::vector<double> probe = theta;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    probe[i] = theta[i] + step;
    const double up = loss(probe);
    probe[i] = theta[i] - step;
    const double down = loss(probe);
    probe[i] = theta[i];
    grad[i] = (up - down) / (2.0 * step);
  }
  return grad;
}

/// Relative gap with an absolute floor, for gradient checks.
inline double relative_gap(double a, double b, double floor = 1e-8) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

/// Largest relative gap between backprop and central differences of the
/// neuron-level loss, over every parameter.
inline double max_gradient_gap(const MlpParams& params, const Matrix& x, std::span<const int> y,
                               double step = 1e-5) {
  const auto analytic = mlp_backward(params, mlp_forward(params, x), y).gradient;
  const auto numeric = finite_difference_gradient(
      params.as_vector(),
      [&](const std::vector<double>& theta) {
        return reference_loss(
            MlpParams::from_vector(params.layer_sizes, params.hidden_activation, theta), x, y);
      },
      step);
  double worst = 0.0;
  for (std::size_t i = 0; i < analytic.size(); ++i) {
    worst = std::max(worst, relative_gap(analytic[i], numeric[i]));
  }
  return worst;
}

/// True when some hidden pre-activation sits within `margin` of the ReLU kink,
/// where finite differences straddle the nondifferentiable point.
inline bool near_relu_kink(const MlpParams& params, const Matrix& x, double margin) {
  if (params.hidden_activation != Activation::relu) return false;
  const auto pass = mlp_forward(params, x);
  for (std::size_t l = 0; l + 1 < pass.caches.size(); ++l) {
    for (double z : pass.caches[l].pre_activation.values()) {
      if (std::abs(z) < margin) return true;
    }
  }
  return false;
}

/// AUC as the probability a positive outranks a negative, ties counting one half.
/// Returned as the same integer ratio the trapezoid produces so equality is exact.
inline double pairwise_auc(std::span<const double> scores, std::span<const int> labels) {
  std::uint64_t doubled = 0;
  std::uint64_t pos = 0;
  std::uint64_t neg = 0;
  for (int y : labels) (y == 1 ? pos : neg)++;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] != 1) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (labels[j] != 0) continue;
      if (scores[i] > scores[j]) doubled += 2;
      else if (scores[i] == scores[j]) doubled += 1;
    }
  }
  return static_cast<double>(doubled) / static_cast<double>(2 * pos * neg);
}

/// sum_k (n_k / sum n) v_k, one coordinate at a time.
inline std::vector<double> scalar_weighted_mean(const std::vector<std::vector<double>>& vectors,
                                                const std::vector<std::size_t>& counts) {
  double total = 0.0;
  for (std::size_t n : counts) total += static_cast<double>(n);
  std::vector<double> out(vectors.front().size(), 0.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < vectors.size(); ++k) {
      acc += static_cast<double>(counts[k]) / total * vectors[k][i];
    }
    out[i] = acc;
  }
  return out;
}

/// Random network with the given layer sizes and nonzero biases.
inline MlpParams random_network(const std::vector<std::size_t>& sizes, Activation act, Rng& rng) {
  MlpParams p = mlp_init(sizes, act, 1.0, rng);
  for (auto& b : p.biases)
    for (double& v : b.values()) v = rng.uniform(-0.5, 0.5);
  return p;
}

}  // namespace fedfraud::oracle
