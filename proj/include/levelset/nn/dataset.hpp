#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "levelset/numerics/rng.hpp"
#include "levelset/numerics/simplex.hpp"

namespace levelset::nn {

/// Labeled grayscale images. Pixels are held as 16-bit quantized values, the
/// same precision the on-disk PNG container uses, so a dataset trains
/// identically whether it was generated in memory or read back from disk.
class LabeledDataset {
 public:
  LabeledDataset() = default;
  LabeledDataset(int width, int height, int num_classes);

  void add(const Image& image, int label);
  void add_quantized(std::span<const std::uint16_t> pixels, int label);

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  int width() const { return width_; }
  int height() const { return height_; }
  int num_classes() const { return num_classes_; }
  int label(std::size_t i) const { return labels_[i]; }
  const std::vector<int>& labels() const { return labels_; }
  Image image(std::size_t i) const;
  std::span<const std::uint16_t> quantized(std::size_t i) const;

  /// Rows [begin, end) as a new dataset.
  LabeledDataset slice(std::size_t begin, std::size_t end) const;

 private:
  int width_ = 0;
  int height_ = 0;
  int num_classes_ = 0;
  std::vector<std::uint16_t> pixels_;
  std::vector<int> labels_;
};

std::uint16_t quantize16(double v);
double dequantize16(std::uint16_t q);

/// n rendered house/rocket images labeled by their mixture component c.
LabeledDataset generate_dataset(std::size_t n, Rng& rng);

}  // namespace levelset::nn
