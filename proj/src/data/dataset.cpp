#include "fedfraud/data/dataset.hpp"

#include <algorithm>

namespace fedfraud {

ParseError::ParseError(std::size_t line, std::string column, const std::string& detail)
    : DataError("parse error at line " + std::to_string(line) + ", column '" + column +
                "': " + detail),
      line_(line),
      column_(std::move(column)) {}

std::size_t Dataset::fraud_count() const noexcept {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
}

Dataset Dataset::subset(std::span<const std::size_t> positions) const {
  Dataset out;
  out.features = features.select_rows(positions);
  out.feature_names = feature_names;
  out.labels.reserve(positions.size());
  out.sample_ids.reserve(positions.size());
  for (std::size_t p : positions) {
    out.labels.push_back(labels[p]);
    out.sample_ids.push_back(sample_ids[p]);
  }
  return out;
}

void Dataset::validate() const {
  if (labels.size() != features.rows()) {
    throw SchemaError("dataset has " + std::to_string(labels.size()) + " labels for " +
                      std::to_string(features.rows()) + " rows");
  }
  if (sample_ids.size() != labels.size()) throw SchemaError("dataset sample id count mismatch");
  if (feature_names.size() != features.cols()) {
    throw SchemaError("dataset has " + std::to_string(feature_names.size()) +
                      " feature names for " + std::to_string(features.cols()) + " columns");
  }
  for (int y : labels) {
    if (y != 0 && y != 1) throw SchemaError("label " + std::to_string(y) + " is not 0 or 1");
  }
}

Dataset make_dataset(Matrix features, std::vector<int> labels,
                     std::vector<std::string> feature_names) {
  Dataset ds;
  if (feature_names.empty()) {
    for (std::size_t j = 0; j < features.cols(); ++j) feature_names.push_back("x" + std::to_string(j));
  }
  ds.sample_ids.resize(labels.size());
  for (std::size_t i = 0; i < ds.sample_ids.size(); ++i) ds.sample_ids[i] = i;
  ds.features = std::move(features);
  ds.labels = std::move(labels);
  ds.feature_names = std::move(feature_names);
  ds.validate();
  return ds;
}

Dataset concat(const Dataset& a, const Dataset& b) {
  if (a.n_features() != b.n_features()) {
    throw SchemaError("concat: feature counts differ (" + std::to_string(a.n_features()) + " vs " +
                      std::to_string(b.n_features()) + ")");
  }
  std::vector<double> data(a.features.values().begin(), a.features.values().end());
  data.insert(data.end(), b.features.values().begin(), b.features.values().end());
  Dataset out;
  out.features = Matrix(a.size() + b.size(), a.n_features(), std::move(data));
  out.labels = a.labels;
  out.labels.insert(out.labels.end(), b.labels.begin(), b.labels.end());
  out.sample_ids = a.sample_ids;
  out.sample_ids.insert(out.sample_ids.end(), b.sample_ids.begin(), b.sample_ids.end());
  out.feature_names = a.feature_names.empty() ? b.feature_names : a.feature_names;
  return out;
}

std::vector<std::size_t> positions_with_label(const Dataset& ds, int label) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ds.labels.size(); ++i)
    if (ds.labels[i] == label) out.push_back(i);
  return out;
}

}  // namespace fedfraud
