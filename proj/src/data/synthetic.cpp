#include "fedfraud/data/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fedfraud/numeric/rng.hpp"

namespace fedfraud {

Dataset generate_synthetic(const SyntheticParams& params) {
  if (params.rows == 0) throw DomainError("generate_synthetic: rows must be positive");
  if (params.features < 3) throw DomainError("generate_synthetic: need at least 3 features");
  if (!(params.fraud_fraction >= 0.0 && params.fraud_fraction <= 1.0)) {
    throw DomainError("generate_synthetic: fraud_fraction must lie in [0, 1]");
  }
  if (!(params.separation >= 0.0) || !std::isfinite(params.separation)) {
    throw DomainError("generate_synthetic: separation must be a non-negative number");
  }

  const std::size_t d = params.features;
  const std::size_t latent = d - 2;
  const std::size_t informative = std::min<std::size_t>(4, latent);
  const double shift = params.separation / std::sqrt(static_cast<double>(informative));

  std::vector<std::string> names{"Time"};
  for (std::size_t j = 1; j <= latent; ++j) names.push_back("V" + std::to_string(j));
  names.push_back("Amount");

  Rng label_rng = Rng(params.seed).split("labels");
  Rng feature_rng = Rng(params.seed).split("features");
  Matrix x(params.rows, d);
  std::vector<int> labels(params.rows);
  for (std::size_t i = 0; i < params.rows; ++i) {
    const bool fraud = label_rng.bernoulli(params.fraud_fraction);
    labels[i] = fraud ? 1 : 0;
    auto row = x.row(i);
    row[0] = std::floor(feature_rng.uniform(0.0, 172800.0));
    for (std::size_t j = 0; j < latent; ++j) {
      row[1 + j] = feature_rng.normal() + (fraud && j < informative ? shift : 0.0);
    }
    row[d - 1] = std::round(std::exp(feature_rng.normal(3.0, 1.0)) * 100.0) / 100.0;
  }
  return make_dataset(std::move(x), std::move(labels), std::move(names));
}

}  // namespace fedfraud
