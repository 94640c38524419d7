#include "levelset/nn/metrics.hpp"

#include <stdexcept>

namespace levelset::nn {

EvalMetrics tally(std::span<const int> truth, std::span<const int> predicted, int num_classes) {
  if (truth.size() != predicted.size()) throw std::invalid_argument("tally: size mismatch");
  if (truth.empty()) throw std::invalid_argument("tally: no predictions");
  EvalMetrics m;
  m.count = truth.size();
  m.confusion.assign(num_classes, std::vector<std::size_t>(num_classes, 0));
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] < 0 || truth[i] >= num_classes || predicted[i] < 0 || predicted[i] >= num_classes) {
      throw std::invalid_argument("tally: label out of range");
    }
    ++m.confusion[truth[i]][predicted[i]];
    if (truth[i] == predicted[i]) ++m.correct;
  }
  m.accuracy = static_cast<double>(m.correct) / static_cast<double>(m.count);
  m.per_class.resize(num_classes);
  for (int c = 0; c < num_classes; ++c) {
    ClassMetrics& cm = m.per_class[c];
    cm.true_positive = m.confusion[c][c];
    for (int o = 0; o < num_classes; ++o) {
      cm.support += m.confusion[c][o];
      if (o != c) {
        cm.false_negative += m.confusion[c][o];
        cm.false_positive += m.confusion[o][c];
      }
    }
    const std::size_t predicted_c = cm.true_positive + cm.false_positive;
    cm.precision = predicted_c ? static_cast<double>(cm.true_positive) / static_cast<double>(predicted_c) : 0.0;
    cm.recall = cm.support ? static_cast<double>(cm.true_positive) / static_cast<double>(cm.support) : 0.0;
  }
  return m;
}

EvalMetrics evaluate(const Classifier& clf, const LabeledDataset& data) {
  if (data.empty()) throw std::invalid_argument("evaluate: empty dataset");
  std::vector<int> predicted(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    predicted[i] = static_cast<int>(clf.predict(data.image(i)).argmax());
  }
  return tally(data.labels(), predicted, static_cast<int>(clf.num_classes()));
}

}  // namespace levelset::nn
