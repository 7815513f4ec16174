#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fedfraud/numeric/matrix.hpp"

namespace fedfraud {

/// Base for dataset loading and schema failures.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public DataError {
 public:
  using DataError::DataError;
};

class SchemaError : public DataError {
 public:
  using DataError::DataError;
};

class ParseError : public DataError {
 public:
  ParseError(std::size_t line, std::string column, const std::string& detail);

  std::size_t line() const noexcept { return line_; }
  const std::string& column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::string column_;
};

/// Labeled feature rows. Label 1 marks fraud.
///
/// `sample_ids` records where each row came from in the original source, so
/// every derived dataset (split, resample, shard) can be checked for overlap.
struct Dataset {
  Matrix features;
  std::vector<int> labels;
  std::vector<std::string> feature_names;
  std::vector<std::size_t> sample_ids;

  std::size_t size() const noexcept { return labels.size(); }
  std::size_t n_features() const noexcept { return features.cols(); }
  bool empty() const noexcept { return labels.empty(); }
  std::size_t fraud_count() const noexcept;
  std::size_t legit_count() const noexcept { return size() - fraud_count(); }

  /// Rows at `positions`, in the given order.
  Dataset subset(std::span<const std::size_t> positions) const;

  /// Throws SchemaError when the invariants are broken.
  void validate() const;
};

/// Builds a dataset with sample ids 0..n-1 and generic names if none are given.
Dataset make_dataset(Matrix features, std::vector<int> labels,
                     std::vector<std::string> feature_names = {});

/// Rows of `a` followed by rows of `b`; feature layouts must match.
Dataset concat(const Dataset& a, const Dataset& b);

/// Positions of rows with the given label, ascending.
std::vector<std::size_t> positions_with_label(const Dataset& ds, int label);

}  // namespace fedfraud
