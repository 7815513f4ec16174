#include "fedfraud/models/classifier.hpp"

namespace fedfraud {

namespace {

MlpHyperparams without_hidden(MlpHyperparams hyper) {
  hyper.hidden_sizes.clear();
  return hyper;
}

}  // namespace

std::vector<int> Classifier::predict(const Matrix& features, double threshold) const {
  const auto proba = predict_proba(features);
  std::vector<int> labels(proba.size());
  for (std::size_t i = 0; i < proba.size(); ++i) labels[i] = proba[i] >= threshold ? 1 : 0;
  return labels;
}

MlpClassifier::MlpClassifier(MlpHyperparams hyper) : MlpClassifier(std::move(hyper), false) {}

MlpClassifier::MlpClassifier(MlpHyperparams hyper, bool allow_no_hidden) : hyper_(std::move(hyper)) {
  hyper_.validate(allow_no_hidden);
}

void MlpClassifier::fit(const Dataset& train, Rng& rng) {
  if (train.empty()) throw DomainError(name() + ": cannot fit an empty dataset");
  Rng init_rng = init_stream(rng);
  params_ = mlp_init(mlp_layer_sizes(train.n_features(), hyper_), hyper_.activation,
                     hyper_.init_scale, init_rng);
  Rng batches = party_stream(rng, 1);
  train_network(params_, train, hyper_, hyper_.epochs, batches);
}

std::vector<double> MlpClassifier::predict_proba(const Matrix& features) const {
  if (params_.layer_count() == 0) throw DomainError(name() + ": model is not fitted");
  return mlp_predict(params_, features);
}

void MlpClassifier::set_params(MlpParams params) {
  params.validate();
  params_ = std::move(params);
}

LogisticRegression::LogisticRegression(MlpHyperparams hyper)
    : MlpClassifier(without_hidden(std::move(hyper)), true) {}

void train_network(MlpParams& params, const Dataset& train, const MlpHyperparams& hyper,
                   std::size_t epochs, Rng& party_rng) {
  for (std::size_t e = 0; e < epochs; ++e) sgd_epoch(params, train, hyper, party_rng);
}

}  // namespace fedfraud
