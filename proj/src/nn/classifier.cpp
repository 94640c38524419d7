#include "levelset/nn/classifier.hpp"

#include <cmath>
#include <stdexcept>

#include "levelset/nn/lswf.hpp"

namespace levelset::nn {

Classifier::Classifier(Network net) : net_(std::move(net)) {
  if (net_.layers().empty() || net_.layers().back().kind != LayerKind::softmax) {
    throw std::invalid_argument("Classifier: final layer must be softmax");
  }
  if (net_.input_shape().channels != 1) throw std::invalid_argument("Classifier: expects single-channel images");
}

Simplex Classifier::predict(const Image& image) const {
  if (image.width != image_width() || image.height != image_height()) {
    throw std::invalid_argument("Classifier: image is " + std::to_string(image.width) + "x" +
                                std::to_string(image.height) + ", expected " + std::to_string(image_width()) + "x" +
                                std::to_string(image_height()));
  }
  std::vector<double> probs = net_.forward(image.pixels);
  // Softmax output already sums to 1 up to rounding; renormalize to keep the Simplex contract tight.
  double sum = 0.0;
  for (double p : probs) sum += p;
  for (double& p : probs) p /= sum;
  return Simplex(std::move(probs));
}

void Classifier::save(const std::filesystem::path& path) const { save_lswf(net_, ModelKind::classifier, path); }

Classifier Classifier::load(const std::filesystem::path& path) {
  LswfModel model = load_lswf(path);
  if (model.kind != ModelKind::classifier) throw LswfError(path.string() + ": LSWF file holds a decoder, not a classifier");
  try {
    return Classifier(std::move(model.network));
  } catch (const std::invalid_argument& e) {
    throw LswfError(path.string() + ": " + e.what());
  }
}

Network default_cnn(int image_side, int num_classes) {
  if (image_side < 4 || image_side % 4 != 0) throw std::invalid_argument("default_cnn: image side must be a multiple of 4");
  const int pooled = image_side / 4;
  std::vector<Layer> layers{
      Layer::conv(1, 8, 3, 1, 1),
      Layer::activation(LayerKind::relu),
      Layer::activation(LayerKind::maxpool2x2),
      Layer::conv(8, 16, 3, 1, 1),
      Layer::activation(LayerKind::relu),
      Layer::activation(LayerKind::maxpool2x2),
      Layer::activation(LayerKind::flatten),
      Layer::dense(16 * pooled * pooled, 64),
      Layer::activation(LayerKind::relu),
      Layer::dense(64, num_classes),
      Layer::activation(LayerKind::softmax),
  };
  return Network(Shape{1, image_side, image_side}, std::move(layers));
}

void kaiming_uniform_init(Network& net, Rng& rng) {
  for (Layer& l : net.mutable_layers()) {
    if (!has_parameters(l.kind)) continue;
    const std::size_t fan_in = l.kind == LayerKind::dense ? static_cast<std::size_t>(l.in)
                                                          : static_cast<std::size_t>(l.in) * l.kernel * l.kernel;
    const double bound = std::sqrt(6.0 / static_cast<double>(fan_in));
    for (double& w : l.weights) w = rng.uniform(-bound, bound);
    std::fill(l.bias.begin(), l.bias.end(), 0.0);
  }
  net.round_to_float();
}

}  // namespace levelset::nn
