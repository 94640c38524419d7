#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "levelset/nn/classifier.hpp"
#include "levelset/nn/dataset.hpp"

namespace levelset::nn {

struct ClassMetrics {
  std::size_t true_positive = 0;
  std::size_t false_positive = 0;
  std::size_t false_negative = 0;
  std::size_t support = 0;  // true instances of the class
  double precision = 0.0;   // 0 when the class is never predicted
  double recall = 0.0;      // 0 when the class never occurs
};

struct EvalMetrics {
  std::size_t count = 0;
  std::size_t correct = 0;
  double accuracy = 0.0;
  std::vector<ClassMetrics> per_class;
  std::vector<std::vector<std::size_t>> confusion;  // [true][predicted]
};

/// Metrics from parallel label/prediction arrays.
EvalMetrics tally(std::span<const int> truth, std::span<const int> predicted, int num_classes);

EvalMetrics evaluate(const Classifier& clf, const LabeledDataset& data);

}  // namespace levelset::nn
