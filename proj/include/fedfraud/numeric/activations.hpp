#pragma once

#include <string_view>

#include "fedfraud/numeric/matrix.hpp"

namespace fedfraud {

enum class Activation { relu, sigmoid };

Activation parse_activation(std::string_view name);
std::string_view to_string(Activation activation) noexcept;

double relu(double x) noexcept;
double relu_derivative(double x) noexcept;
/// Branches on sign so neither exp() call can overflow.
double sigmoid(double x) noexcept;
double sigmoid_derivative(double x) noexcept;

Matrix relu(const Matrix& x);
Matrix relu_derivative(const Matrix& x);
Matrix sigmoid(const Matrix& x);
Matrix sigmoid_derivative(const Matrix& x);

/// Applies `activation` elementwise.
Matrix activate(Activation activation, const Matrix& z);
/// Derivative of `activation` evaluated at the pre-activation `z`.
Matrix activate_derivative(Activation activation, const Matrix& z);

}  // namespace fedfraud
