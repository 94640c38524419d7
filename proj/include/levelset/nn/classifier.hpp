#pragma once

#include <filesystem>

#include "levelset/nn/network.hpp"
#include "levelset/numerics/rng.hpp"
#include "levelset/numerics/simplex.hpp"

namespace levelset::nn {

/// Network whose final layer is softmax; maps an image to a Simplex over its classes.
class Classifier {
 public:
  Classifier() = default;
  /// Throws std::invalid_argument unless the last layer is softmax.
  explicit Classifier(Network net);

  const Network& network() const { return net_; }
  Network& mutable_network() { return net_; }
  std::size_t num_classes() const { return net_.output_shape().size(); }
  int image_width() const { return net_.input_shape().width; }
  int image_height() const { return net_.input_shape().height; }

  /// Throws std::invalid_argument on an image of the wrong size.
  Simplex predict(const Image& image) const;

  void save(const std::filesystem::path& path) const;
  static Classifier load(const std::filesystem::path& path);

 private:
  Network net_;
};

/// Default CNN for square single-channel images:
/// conv(1->8,3x3,pad 1) relu pool conv(8->16,3x3,pad 1) relu pool flatten dense(64) relu dense(classes) softmax.
Network default_cnn(int image_side, int num_classes);

/// Kaiming-uniform (fan-in) weights, zero biases, rounded to float precision.
void kaiming_uniform_init(Network& net, Rng& rng);

}  // namespace levelset::nn
