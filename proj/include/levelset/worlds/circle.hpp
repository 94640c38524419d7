#pragma once

#include "levelset/worlds/house_rocket.hpp"

namespace levelset {

/// House/rocket parameters plus an overlaid circle: radius r and center (cx, cy) in pixels.
struct CircleLatent {
  HouseRocketLatent shape;
  double r = 0.0;
  double cx = 0.0;
  double cy = 0.0;

  std::array<double, 6> as_array() const { return {shape.w, shape.h, shape.t, r, cx, cy}; }
  static CircleLatent from(std::span<const double> z);
};

inline constexpr TruncatedNormalParams kCircleRadius{20.0, 10.0};
inline constexpr double kCircleCenterLo = 20.0;
inline constexpr double kCircleCenterHi = 40.0;

CircleLatent circle_sample_prior(Rng& rng);
double circle_world_log_prior(const CircleLatent& z);
Image render_with_circle(const CircleLatent& z);

class CircleWorld final : public WorldModel {
 public:
  std::string name() const override { return "circle"; }
  std::size_t latent_dim() const override { return 6; }
  int image_width() const override;
  int image_height() const override;
  std::vector<double> sample_prior(Rng& rng) const override;
  double log_prior(std::span<const double> z) const override;
  Image reconstruct(std::span<const double> z) const override;
};

}  // namespace levelset
