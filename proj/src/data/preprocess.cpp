#include "fedfraud/data/preprocess.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "fedfraud/diagnostics.hpp"

namespace fedfraud {

StandardizationParams fit_standardizer(const Dataset& train) {
  if (train.empty()) throw DomainError("fit_standardizer: empty training set");
  const std::size_t n = train.size();
  const std::size_t d = train.n_features();
  StandardizationParams params{std::vector<double>(d, 0.0), std::vector<double>(d, 0.0)};
  for (std::size_t i = 0; i < n; ++i) {
    auto row = train.features.row(i);
    for (std::size_t j = 0; j < d; ++j) params.mean[j] += row[j];
  }
  for (double& m : params.mean) m /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = train.features.row(i);
    for (std::size_t j = 0; j < d; ++j) {
      const double dev = row[j] - params.mean[j];
      params.stddev[j] += dev * dev;
    }
  }
  for (double& s : params.stddev) s = std::sqrt(s / static_cast<double>(n));
  return params;
}

Dataset apply_standardizer(const StandardizationParams& params, const Dataset& ds) {
  if (params.mean.size() != ds.n_features() || params.stddev.size() != ds.n_features()) {
    throw ShapeError("apply_standardizer: fitted on " + std::to_string(params.mean.size()) +
                     " features, dataset has " + std::to_string(ds.n_features()));
  }
  Dataset out = ds;
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto row = out.features.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      row[j] -= params.mean[j];
      if (params.stddev[j] > 0.0) row[j] /= params.stddev[j];
    }
  }
  return out;
}

TrainTestSplit stratified_split(const Dataset& ds, double test_fraction, Rng& rng) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw DomainError("stratified_split: test_fraction must lie in (0, 1)");
  }
  std::vector<char> in_test(ds.size(), 0);
  for (int label : {0, 1}) {
    auto positions = positions_with_label(ds, label);
    if (positions.empty()) {
      throw DomainError("stratified_split: no samples with label " + std::to_string(label));
    }
    shuffle_in_place(rng, positions);
    const auto n_test = static_cast<std::size_t>(
        std::llround(test_fraction * static_cast<double>(positions.size())));
    for (std::size_t i = 0; i < std::min(n_test, positions.size()); ++i) in_test[positions[i]] = 1;
  }
  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> test_rows;
  for (std::size_t i = 0; i < ds.size(); ++i) (in_test[i] ? test_rows : train_rows).push_back(i);
  return {ds.subset(train_rows), ds.subset(test_rows)};
}

SamplingRatio SamplingRatio::parse(std::string_view text) {
  const auto colon = text.find(':');
  auto part = [&](std::string_view s) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || v == 0) {
      throw DomainError("sampling ratio '" + std::string(text) + "' must look like 1:100");
    }
    return v;
  };
  if (colon == std::string_view::npos) {
    throw DomainError("sampling ratio '" + std::string(text) + "' must look like 1:100");
  }
  return {part(text.substr(0, colon)), part(text.substr(colon + 1))};
}

std::string SamplingRatio::to_string() const {
  return std::to_string(fraud) + ":" + std::to_string(legit);
}

std::size_t SamplingRatio::legit_for(std::size_t fraud_rows) const {
  return (fraud_rows * legit + fraud / 2) / fraud;
}

Dataset resample_ratio(const Dataset& ds, SamplingRatio ratio, Rng& rng) {
  if (ratio.fraud == 0 || ratio.legit == 0) throw DomainError("resample_ratio: zero ratio part");
  auto fraud = positions_with_label(ds, 1);
  auto legit = positions_with_label(ds, 0);
  if (fraud.empty()) throw DomainError("resample_ratio: dataset has no fraud samples");

  std::size_t wanted = ratio.legit_for(fraud.size());
  if (wanted > legit.size()) {
    warn("resample_ratio " + ratio.to_string() + ": wanted " + std::to_string(wanted) +
         " legit rows but only " + std::to_string(legit.size()) + " exist; keeping all");
    wanted = legit.size();
  }
  shuffle_in_place(rng, legit);
  std::vector<std::size_t> rows = fraud;
  rows.insert(rows.end(), legit.begin(), legit.begin() + static_cast<std::ptrdiff_t>(wanted));
  shuffle_in_place(rng, rows);
  return ds.subset(rows);
}

}  // namespace fedfraud
