#pragma once

#include <cstddef>
#include <vector>

#include "fedfraud/models/classifier.hpp"

namespace fedfraud {

struct DecisionTreeParams {
  /// 0 grows until every leaf is pure (or cannot be split).
  std::size_t max_depth = 0;
  std::size_t min_samples_leaf = 1;
};

struct TreeNode {
  /// -1 marks a leaf.
  int feature = -1;
  /// Rows with x[feature] <= threshold go left.
  double threshold = 0.0;
  std::size_t left = 0;
  std::size_t right = 0;
  std::size_t samples = 0;
  std::size_t fraud = 0;
  double gini = 0.0;

  bool is_leaf() const noexcept { return feature < 0; }
  double fraud_probability() const noexcept {
    return samples == 0 ? 0.0 : static_cast<double>(fraud) / static_cast<double>(samples);
  }
};

/// 1 - p^2 - (1-p)^2 for a node with `fraud` positives out of `total`.
double gini_impurity(std::size_t fraud, std::size_t total) noexcept;

/// Binary CART tree on Gini impurity.
///
/// Candidate thresholds are midpoints between consecutive distinct values of
/// each feature. The split with the lowest weighted child impurity wins; ties
/// go to the lower feature index, then the lower threshold. A node becomes a
/// leaf when it is pure, at max_depth, or when no split leaves
/// min_samples_leaf rows on both sides.
class DecisionTree : public Classifier {
 public:
  explicit DecisionTree(DecisionTreeParams params = {});

  std::string name() const override { return "DT"; }
  /// Deterministic; `rng` is unused.
  void fit(const Dataset& train, Rng& rng) override;
  std::vector<double> predict_proba(const Matrix& features) const override;

  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  std::size_t depth() const noexcept;

 private:
  std::size_t grow(const Dataset& train, std::vector<std::size_t>& rows, std::size_t depth);

  DecisionTreeParams params_;
  std::vector<TreeNode> nodes_;
  std::size_t n_features_ = 0;
};

}  // namespace fedfraud
