#pragma once

#include <memory>
#include <string>
#include <vector>

#include "fedfraud/data/dataset.hpp"
#include "fedfraud/models/mlp.hpp"
#include "fedfraud/numeric/matrix.hpp"
#include "fedfraud/numeric/rng.hpp"

namespace fedfraud {

/// Binary fraud classifier. predict() labels a row 1 exactly when its
/// probability is >= threshold.
class Classifier {
 public:
  virtual ~Classifier() = default;

  virtual std::string name() const = 0;
  virtual void fit(const Dataset& train, Rng& rng) = 0;
  virtual std::vector<double> predict_proba(const Matrix& features) const = 0;

  std::vector<int> predict(const Matrix& features, double threshold) const;
};

/// Feed-forward network trained by mini-batch SGD on cross-entropy.
class MlpClassifier : public Classifier {
 public:
  explicit MlpClassifier(MlpHyperparams hyper);

  std::string name() const override { return "MLP"; }
  void fit(const Dataset& train, Rng& rng) override;
  std::vector<double> predict_proba(const Matrix& features) const override;

  const MlpParams& params() const noexcept { return params_; }
  void set_params(MlpParams params);
  const MlpHyperparams& hyperparams() const noexcept { return hyper_; }

 protected:
  MlpClassifier(MlpHyperparams hyper, bool allow_no_hidden);

 private:
  MlpHyperparams hyper_;
  MlpParams params_;
};

/// Logistic regression: the same network and trainer with no hidden layers.
class LogisticRegression : public MlpClassifier {
 public:
  /// Any hidden sizes in `hyper` are dropped.
  explicit LogisticRegression(MlpHyperparams hyper);

  std::string name() const override { return "LR"; }
};

/// Trains a model from an initial stream and a party-1 batch stream split off `rng`.
void train_network(MlpParams& params, const Dataset& train, const MlpHyperparams& hyper,
                   std::size_t epochs, Rng& party_rng);

}  // namespace fedfraud
