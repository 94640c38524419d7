#include "levelset/worlds/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "levelset/nn/lswf.hpp"
#include "levelset/numerics/distributions.hpp"

namespace levelset {

DecoderWorld::DecoderWorld(nn::Network decoder) : net_(std::move(decoder)) {
  if (net_.layers().empty()) throw std::invalid_argument("DecoderWorld: decoder has no layers");
  const nn::LayerKind last = net_.layers().back().kind;
  if (last != nn::LayerKind::sigmoid && last != nn::LayerKind::tanh) {
    throw std::invalid_argument("DecoderWorld: layer " + std::to_string(net_.layers().size() - 1) + " (" +
                                nn::to_string(last) + ") must be sigmoid or tanh");
  }
  tanh_output_ = last == nn::LayerKind::tanh;
  const std::size_t n = net_.output_shape().size();
  const auto side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  if (static_cast<std::size_t>(side) * static_cast<std::size_t>(side) != n) {
    throw std::invalid_argument("DecoderWorld: output size " + std::to_string(n) + " is not a square image");
  }
  side_ = side;
}

DecoderWorld DecoderWorld::load(const std::filesystem::path& lswf_path) {
  nn::LswfModel model = nn::load_lswf(lswf_path);
  if (model.kind != nn::ModelKind::decoder) {
    throw nn::LswfError(lswf_path.string() + ": LSWF file holds a classifier, not a decoder");
  }
  return DecoderWorld(std::move(model.network));
}

std::size_t DecoderWorld::latent_dim() const { return net_.input_shape().size(); }

std::vector<double> DecoderWorld::sample_prior(Rng& rng) const {
  std::vector<double> z(latent_dim());
  for (double& v : z) v = rng.normal();
  return z;
}

double DecoderWorld::log_prior(std::span<const double> z) const {
  if (z.size() != latent_dim()) {
    throw std::invalid_argument("DecoderWorld: latent has " + std::to_string(z.size()) + " components, expected " +
                                std::to_string(latent_dim()));
  }
  return decoder_log_prior(z);
}

Image DecoderWorld::reconstruct(std::span<const double> z) const {
  if (z.size() != latent_dim()) {
    throw std::invalid_argument("DecoderWorld: latent has " + std::to_string(z.size()) + " components, expected " +
                                std::to_string(latent_dim()));
  }
  std::vector<double> out = net_.forward(z);
  if (tanh_output_) {
    for (double& v : out) v = 0.5 * (v + 1.0);
  }
  for (double& v : out) v = std::clamp(v, 0.0, 1.0);
  Image img;
  img.width = side_;
  img.height = side_;
  img.pixels = std::move(out);
  return img;
}

double decoder_log_prior(std::span<const double> z) { return std_normal_logpdf(z); }

}  // namespace levelset
