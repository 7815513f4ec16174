#include "fedfraud/metrics/metrics.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>

#include "fedfraud/numeric/matrix.hpp"

namespace fedfraud {

namespace {

Score ratio(std::size_t num, std::size_t den) noexcept {
  if (den == 0) return {0.0, true};
  return {static_cast<double>(num) / static_cast<double>(den), false};
}

}  // namespace

ConfusionMatrix confusion(std::span<const double> probabilities, std::span<const int> labels,
                          double threshold) {
  if (probabilities.size() != labels.size()) {
    throw ShapeError("confusion: " + std::to_string(probabilities.size()) + " scores for " +
                     std::to_string(labels.size()) + " labels");
  }
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool predicted = probabilities[i] >= threshold;
    if (labels[i] == 1) {
      ++(predicted ? cm.tp : cm.fn);
    } else {
      ++(predicted ? cm.fp : cm.tn);
    }
  }
  return cm;
}

double accuracy(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw DomainError("accuracy: empty confusion matrix");
  return static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
}

Score precision(const ConfusionMatrix& cm) noexcept { return ratio(cm.tp, cm.tp + cm.fp); }

Score recall(const ConfusionMatrix& cm) noexcept { return ratio(cm.tp, cm.tp + cm.fn); }

Score f1(double p, double r) noexcept {
  if (p + r == 0.0) return {0.0, true};
  return {2.0 * p * r / (p + r), false};
}

Score f1(const ConfusionMatrix& cm) noexcept {
  const Score p = precision(cm);
  const Score r = recall(cm);
  Score out = f1(p.value, r.value);
  out.degenerate = out.degenerate || p.degenerate || r.degenerate;
  return out;
}

RocResult roc_auc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) {
    throw ShapeError("roc_auc: " + std::to_string(scores.size()) + " scores for " +
                     std::to_string(labels.size()) + " labels");
  }
  const auto positives = static_cast<std::uint64_t>(std::count(labels.begin(), labels.end(), 1));
  const std::uint64_t negatives = labels.size() - positives;
  if (positives == 0 || negatives == 0) throw DomainError("roc_auc: both classes must be present");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  RocResult result;
  result.curve.push_back({0.0, 0.0});
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  // Twice the area in units of one (positive, negative) pair.
  std::uint64_t doubled_area = 0;
  for (std::size_t i = 0; i < order.size();) {
    const double s = scores[order[i]];
    std::uint64_t group_tp = 0;
    std::uint64_t group_fp = 0;
    for (; i < order.size() && scores[order[i]] == s; ++i) {
      ++(labels[order[i]] == 1 ? group_tp : group_fp);
    }
    doubled_area += group_fp * (2 * tp + group_tp);
    tp += group_tp;
    fp += group_fp;
    result.curve.push_back({static_cast<double>(fp) / static_cast<double>(negatives),
                            static_cast<double>(tp) / static_cast<double>(positives)});
  }
  result.auc = static_cast<double>(doubled_area) / static_cast<double>(2 * positives * negatives);
  return result;
}

double auc(std::span<const double> scores, std::span<const int> labels) {
  return roc_auc(scores, labels).auc;
}

EvaluationSummary evaluate(std::span<const double> scores, std::span<const int> labels,
                           double threshold) {
  EvaluationSummary s;
  s.confusion = confusion(scores, labels, threshold);
  s.accuracy = accuracy(s.confusion);
  s.precision = precision(s.confusion);
  s.recall = recall(s.confusion);
  s.f1 = f1(s.confusion);
  s.auc = auc(scores, labels);
  return s;
}

}  // namespace fedfraud
