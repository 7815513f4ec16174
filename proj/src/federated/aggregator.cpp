#include "fedfraud/federated/aggregator.hpp"

#include <string>

#include "fedfraud/numeric/matrix.hpp"

namespace fedfraud {

std::vector<double> aggregation_weights(std::span<const Contribution> contributions) {
  if (contributions.empty()) throw DomainError("aggregate: no contributions");
  std::size_t total = 0;
  for (const auto& c : contributions) total += c.sample_count;
  if (total == 0) throw DomainError("aggregate: contributions carry no samples");
  std::vector<double> weights;
  weights.reserve(contributions.size());
  for (const auto& c : contributions) {
    weights.push_back(static_cast<double>(c.sample_count) / static_cast<double>(total));
  }
  return weights;
}

std::vector<double> aggregate(std::span<const Contribution> contributions) {
  const auto weights = aggregation_weights(contributions);
  const std::size_t d = contributions.front().values.size();
  std::vector<double> out(d, 0.0);
  for (std::size_t k = 0; k < contributions.size(); ++k) {
    const auto& v = contributions[k].values;
    if (v.size() != d) {
      throw ShapeError("aggregate: contribution " + std::to_string(k) + " has length " +
                       std::to_string(v.size()) + ", expected " + std::to_string(d));
    }
    for (std::size_t i = 0; i < d; ++i) out[i] += weights[k] * v[i];
  }
  return out;
}

}  // namespace fedfraud
