#include "fedfraud/models/decision_tree.hpp"

#include <algorithm>
#include <limits>
#include <utility>

namespace fedfraud {

namespace {

struct SplitChoice {
  int feature = -1;
  double threshold = 0.0;
  double impurity = std::numeric_limits<double>::infinity();
};

double midpoint(double lo, double hi) {
  const double mid = lo + (hi - lo) / 2.0;
  // Adjacent doubles can round the midpoint up onto `hi`.
  return mid < hi ? mid : lo;
}

SplitChoice best_split(const Dataset& train, const std::vector<std::size_t>& rows,
                       std::size_t min_leaf) {
  SplitChoice best;
  const std::size_t n = rows.size();
  std::size_t total_fraud = 0;
  for (std::size_t r : rows) total_fraud += static_cast<std::size_t>(train.labels[r]);

  std::vector<std::pair<double, int>> column(n);
  for (std::size_t f = 0; f < train.n_features(); ++f) {
    for (std::size_t i = 0; i < n; ++i) column[i] = {train.features(rows[i], f), train.labels[rows[i]]};
    std::sort(column.begin(), column.end());

    std::size_t left_fraud = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      left_fraud += static_cast<std::size_t>(column[i].second);
      const std::size_t left_n = i + 1;
      const std::size_t right_n = n - left_n;
      if (column[i].first == column[i + 1].first) continue;
      if (left_n < min_leaf || right_n < min_leaf) continue;
      const double impurity =
          (static_cast<double>(left_n) * gini_impurity(left_fraud, left_n) +
           static_cast<double>(right_n) * gini_impurity(total_fraud - left_fraud, right_n)) /
          static_cast<double>(n);
      if (impurity < best.impurity) {
        best = {static_cast<int>(f), midpoint(column[i].first, column[i + 1].first), impurity};
      }
    }
  }
  return best;
}

}  // namespace

double gini_impurity(std::size_t fraud, std::size_t total) noexcept {
  if (total == 0) return 0.0;
  const double p = static_cast<double>(fraud) / static_cast<double>(total);
  return 1.0 - p * p - (1.0 - p) * (1.0 - p);
}

DecisionTree::DecisionTree(DecisionTreeParams params) : params_(params) {
  if (params_.min_samples_leaf == 0) throw DomainError("DecisionTree: min_samples_leaf must be >= 1");
}

void DecisionTree::fit(const Dataset& train, Rng& /*rng*/) {
  if (train.empty()) throw DomainError("DT: cannot fit an empty dataset");
  nodes_.clear();
  n_features_ = train.n_features();
  std::vector<std::size_t> rows(train.size());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  grow(train, rows, 0);
}

std::size_t DecisionTree::grow(const Dataset& train, std::vector<std::size_t>& rows,
                               std::size_t depth) {
  const std::size_t id = nodes_.size();
  nodes_.emplace_back();
  TreeNode node;
  node.samples = rows.size();
  for (std::size_t r : rows) node.fraud += static_cast<std::size_t>(train.labels[r]);
  node.gini = gini_impurity(node.fraud, node.samples);

  const bool pure = node.fraud == 0 || node.fraud == node.samples;
  const bool depth_capped = params_.max_depth != 0 && depth >= params_.max_depth;
  if (!pure && !depth_capped && rows.size() >= 2 * params_.min_samples_leaf) {
    const SplitChoice split = best_split(train, rows, params_.min_samples_leaf);
    if (split.feature >= 0) {
      std::vector<std::size_t> left_rows;
      std::vector<std::size_t> right_rows;
      for (std::size_t r : rows) {
        (train.features(r, static_cast<std::size_t>(split.feature)) <= split.threshold ? left_rows
                                                                                       : right_rows)
            .push_back(r);
      }
      rows.clear();
      rows.shrink_to_fit();
      node.feature = split.feature;
      node.threshold = split.threshold;
      node.left = grow(train, left_rows, depth + 1);
      node.right = grow(train, right_rows, depth + 1);
    }
  }
  nodes_[id] = node;
  return id;
}

std::vector<double> DecisionTree::predict_proba(const Matrix& features) const {
  if (nodes_.empty()) throw DomainError("DT: model is not fitted");
  if (features.cols() != n_features_) {
    throw ShapeError("DT: input " + features.shape_string() + " but tree was fit on " +
                     std::to_string(n_features_) + " features");
  }
  std::vector<double> out(features.rows());
  for (std::size_t i = 0; i < features.rows(); ++i) {
    std::size_t at = 0;
    while (!nodes_[at].is_leaf()) {
      const TreeNode& n = nodes_[at];
      at = features(i, static_cast<std::size_t>(n.feature)) <= n.threshold ? n.left : n.right;
    }
    out[i] = nodes_[at].fraud_probability();
  }
  return out;
}

std::size_t DecisionTree::depth() const noexcept {
  if (nodes_.empty()) return 0;
  std::size_t deepest = 0;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [at, d] = stack.back();
    stack.pop_back();
    deepest = std::max(deepest, d);
    if (!nodes_[at].is_leaf()) {
      stack.emplace_back(nodes_[at].left, d + 1);
      stack.emplace_back(nodes_[at].right, d + 1);
    }
  }
  return deepest;
}

}  // namespace fedfraud
