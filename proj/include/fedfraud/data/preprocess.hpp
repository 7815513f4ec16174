#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "fedfraud/data/dataset.hpp"
#include "fedfraud/numeric/rng.hpp"

namespace fedfraud {

/// Per-feature population mean and standard deviation, fit on training data.
struct StandardizationParams {
  std::vector<double> mean;
  std::vector<double> stddev;
};

StandardizationParams fit_standardizer(const Dataset& train);

/// (x - mean) / std per column; zero-variance columns are only centered.
Dataset apply_standardizer(const StandardizationParams& params, const Dataset& ds);

struct TrainTestSplit {
  Dataset train;
  Dataset test;
};

/// Splits each class separately so both halves keep the class balance.
/// Both parts preserve the source row order.
TrainTestSplit stratified_split(const Dataset& ds, double test_fraction, Rng& rng);

/// Target class balance as fraud:legit parts, e.g. 1:100.
struct SamplingRatio {
  std::size_t fraud = 1;
  std::size_t legit = 1;

  /// Parses "F:L" with positive integer parts.
  static SamplingRatio parse(std::string_view text);
  std::string to_string() const;

  /// Legit rows demanded by `fraud_rows` fraud rows, rounded to nearest.
  std::size_t legit_for(std::size_t fraud_rows) const;

  bool operator==(const SamplingRatio&) const = default;
};

/// Keeps every fraud row and undersamples legit rows without replacement to
/// reach the ratio. Asking for more legit rows than exist keeps them all and
/// emits a warning. Output rows are shuffled.
Dataset resample_ratio(const Dataset& ds, SamplingRatio ratio, Rng& rng);

}  // namespace fedfraud
