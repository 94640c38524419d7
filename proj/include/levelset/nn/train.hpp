#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "levelset/nn/classifier.hpp"
#include "levelset/nn/dataset.hpp"

namespace levelset::nn {

struct TrainConfig {
  int epochs = 5;
  int batch_size = 64;
  double learning_rate = 1e-3;
  std::string optimizer = "adam";  // "adam" or "sgd"
  std::uint64_t seed = 0;
  int threads = 1;

  /// Throws std::invalid_argument on non-positive fields or an unknown optimizer.
  void validate() const;
};

struct LossRecord {
  int epoch;
  int batch;
  double loss;
};

struct TrainResult {
  std::vector<LossRecord> history;
};

/// Cross-entropy of the network's softmax output against `label`. Parameter
/// gradients are accumulated into `grads`; returns the loss.
double cross_entropy_backward(const Network& net, std::span<const double> input, int label, Gradients& grads);

/// Minibatch training on cross-entropy. Batches are split into fixed-size
/// chunks whose gradients are reduced in index order, so the loss history is
/// identical for any thread count. Parameters are rounded to float precision
/// on return. Throws std::runtime_error if the loss becomes NaN.
TrainResult train(Classifier& clf, const LabeledDataset& data, const TrainConfig& cfg,
                  const std::function<void(const LossRecord&)>& on_batch = {});

}  // namespace levelset::nn
