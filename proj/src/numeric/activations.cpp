#include "fedfraud/numeric/activations.hpp"

#include <cmath>
#include <string>

namespace fedfraud {

Activation parse_activation(std::string_view name) {
  if (name == "relu") return Activation::relu;
  if (name == "sigmoid") return Activation::sigmoid;
  throw DomainError("unknown activation '" + std::string(name) + "'");
}

std::string_view to_string(Activation activation) noexcept {
  switch (activation) {
    case Activation::relu: return "relu";
    case Activation::sigmoid: return "sigmoid";
  }
  return "unknown";
}

double relu(double x) noexcept { return x > 0.0 ? x : 0.0; }

double relu_derivative(double x) noexcept { return x > 0.0 ? 1.0 : 0.0; }

double sigmoid(double x) noexcept {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double sigmoid_derivative(double x) noexcept {
  const double s = sigmoid(x);
  return s * (1.0 - s);
}

Matrix relu(const Matrix& x) {
  Matrix out = x;
  for (double& v : out.values()) v = relu(v);
  return out;
}

Matrix relu_derivative(const Matrix& x) {
  Matrix out = x;
  for (double& v : out.values()) v = relu_derivative(v);
  return out;
}

Matrix sigmoid(const Matrix& x) {
  Matrix out = x;
  for (double& v : out.values()) v = sigmoid(v);
  return out;
}

Matrix sigmoid_derivative(const Matrix& x) {
  Matrix out = x;
  for (double& v : out.values()) v = sigmoid_derivative(v);
  return out;
}

Matrix activate(Activation activation, const Matrix& z) {
  return activation == Activation::relu ? relu(z) : sigmoid(z);
}

Matrix activate_derivative(Activation activation, const Matrix& z) {
  return activation == Activation::relu ? relu_derivative(z) : sigmoid_derivative(z);
}

}  // namespace fedfraud
