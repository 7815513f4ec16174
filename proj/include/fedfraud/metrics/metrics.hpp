#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fedfraud {

/// Counts at a decision threshold; fraud (label 1) is the positive class.
struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const noexcept { return tp + fp + fn + tn; }
  bool operator==(const ConfusionMatrix&) const = default;
};

/// A ratio that may be undefined (zero denominator). Undefined ratios carry
/// value 0 and degenerate == true instead of NaN.
struct Score {
  double value = 0.0;
  bool degenerate = false;
};

/// A row is predicted fraud when its probability is >= threshold.
ConfusionMatrix confusion(std::span<const double> probabilities, std::span<const int> labels,
                          double threshold = 0.5);

/// (TP + TN) / total. Throws DomainError for an empty matrix.
double accuracy(const ConfusionMatrix& cm);
/// TP / (TP + FP).
Score precision(const ConfusionMatrix& cm) noexcept;
/// TP / (TP + FN).
Score recall(const ConfusionMatrix& cm) noexcept;
/// Harmonic mean of precision and recall.
Score f1(const ConfusionMatrix& cm) noexcept;
Score f1(double precision, double recall) noexcept;

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

struct RocResult {
  /// From (0,0) to (1,1), one point per distinct score, non-decreasing in both axes.
  std::vector<RocPoint> curve;
  double auc = 0.0;
};

/// ROC curve by sweeping the threshold down through the distinct scores and
/// trapezoidal AUC. Equal scores form a single step, which makes the area
/// identical to the tie-corrected Mann-Whitney statistic; the area is
/// accumulated in integer units so the two agree bit for bit. Throws
/// DomainError unless both classes are present.
RocResult roc_auc(std::span<const double> scores, std::span<const int> labels);

/// Convenience: the AUC alone.
double auc(std::span<const double> scores, std::span<const int> labels);

/// Threshold metrics plus AUC for one evaluated model.
struct EvaluationSummary {
  double auc = 0.0;
  double accuracy = 0.0;
  Score precision;
  Score recall;
  Score f1;
  ConfusionMatrix confusion;
};

EvaluationSummary evaluate(std::span<const double> scores, std::span<const int> labels,
                           double threshold = 0.5);

}  // namespace fedfraud
