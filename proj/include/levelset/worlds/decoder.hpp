#pragma once

#include <filesystem>

#include "levelset/nn/network.hpp"
#include "levelset/worlds/world.hpp"

namespace levelset {

/// World backed by a learned decoder g with an MVN(0, I) latent prior.
///
/// The decoder's last layer must be sigmoid or tanh; tanh outputs are mapped
/// to [0, 1] by (y + 1) / 2. The flat output is read as a square image.
class DecoderWorld final : public WorldModel {
 public:
  explicit DecoderWorld(nn::Network decoder);
  static DecoderWorld load(const std::filesystem::path& lswf_path);

  std::string name() const override { return "decoder"; }
  std::size_t latent_dim() const override;
  int image_width() const override { return side_; }
  int image_height() const override { return side_; }
  std::vector<double> sample_prior(Rng& rng) const override;
  double log_prior(std::span<const double> z) const override;
  Image reconstruct(std::span<const double> z) const override;

  const nn::Network& network() const { return net_; }

 private:
  nn::Network net_;
  int side_ = 0;
  bool tanh_output_ = false;
};

/// MVN(0, I) log density; the decoder world's prior.
double decoder_log_prior(std::span<const double> z);

}  // namespace levelset
