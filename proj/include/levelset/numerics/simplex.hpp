#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace levelset {

/// Probability vector over L classes: entries are non-negative and sum to 1.
class Simplex {
 public:
  static constexpr double kSumTolerance = 1e-9;

  Simplex() = default;
  /// Validates and stores `probs`; throws std::invalid_argument otherwise.
  explicit Simplex(std::vector<double> probs);

  /// Clamp every entry to [floor, 1] and renormalize.
  static Simplex clamp_renormalize(std::span<const double> probs, double floor);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> values() const { return probs_; }
  const std::vector<double>& vector() const { return probs_; }

  std::size_t argmax() const;
  double max() const;

  friend bool operator==(const Simplex&, const Simplex&) = default;

 private:
  std::vector<double> probs_;
};

/// Row-major grayscale image with pixel values in [0, 1].
struct Image {
  int width = 0;
  int height = 0;
  std::vector<double> pixels;

  Image() = default;
  Image(int w, int h, double fill = 0.0)
      : width(w), height(h), pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {}

  double& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
  double at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }

  std::size_t size() const { return pixels.size(); }
  bool valid() const;

  friend bool operator==(const Image&, const Image&) = default;
};

}  // namespace levelset
