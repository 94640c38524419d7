#include "levelset/nn/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "levelset/worlds/house_rocket.hpp"
#include "levelset/worlds/render.hpp"

namespace levelset::nn {

std::uint16_t quantize16(double v) { return static_cast<std::uint16_t>(std::lround(std::clamp(v, 0.0, 1.0) * 65535.0)); }

double dequantize16(std::uint16_t q) { return static_cast<double>(q) / 65535.0; }

LabeledDataset::LabeledDataset(int width, int height, int num_classes)
    : width_(width), height_(height), num_classes_(num_classes) {
  if (width <= 0 || height <= 0 || num_classes <= 0) throw std::invalid_argument("LabeledDataset: dimensions must be positive");
}

void LabeledDataset::add(const Image& image, int label) {
  if (image.width != width_ || image.height != height_) throw std::invalid_argument("LabeledDataset: image size mismatch");
  std::vector<std::uint16_t> q(image.pixels.size());
  std::transform(image.pixels.begin(), image.pixels.end(), q.begin(), quantize16);
  add_quantized(q, label);
}

void LabeledDataset::add_quantized(std::span<const std::uint16_t> pixels, int label) {
  if (pixels.size() != static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_)) {
    throw std::invalid_argument("LabeledDataset: pixel count mismatch");
  }
  if (label < 0 || label >= num_classes_) throw std::invalid_argument("LabeledDataset: label " + std::to_string(label) + " out of range");
  pixels_.insert(pixels_.end(), pixels.begin(), pixels.end());
  labels_.push_back(label);
}

std::span<const std::uint16_t> LabeledDataset::quantized(std::size_t i) const {
  const std::size_t n = static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  return std::span<const std::uint16_t>(pixels_).subspan(i * n, n);
}

Image LabeledDataset::image(std::size_t i) const {
  Image img(width_, height_);
  const auto q = quantized(i);
  std::transform(q.begin(), q.end(), img.pixels.begin(), dequantize16);
  return img;
}

LabeledDataset LabeledDataset::slice(std::size_t begin, std::size_t end) const {
  if (begin > end || end > size()) throw std::out_of_range("LabeledDataset::slice: bad range");
  LabeledDataset out(width_, height_, num_classes_);
  for (std::size_t i = begin; i < end; ++i) out.add_quantized(quantized(i), labels_[i]);
  return out;
}

LabeledDataset generate_dataset(std::size_t n, Rng& rng) {
  if (n == 0) throw std::invalid_argument("generate_dataset: n must be positive");
  LabeledDataset data(render::kCanvasSize, render::kCanvasSize, 2);
  for (std::size_t i = 0; i < n; ++i) {
    const LabeledLatent item = house_rocket_sample_labeled(rng);
    data.add(render_house_rocket(item.z), item.label);
  }
  return data;
}

}  // namespace levelset::nn
