#pragma once

#include <array>

#include "levelset/worlds/world.hpp"

namespace levelset {

/// Rectangle width w, rectangle height h, triangle height t (pixels).
struct HouseRocketLatent {
  double w = 0.0;
  double h = 0.0;
  double t = 0.0;

  std::array<double, 3> as_array() const { return {w, h, t}; }
  static HouseRocketLatent from(std::span<const double> z);
};

/// Mean and standard deviation of a positive-truncated normal.
struct TruncatedNormalParams {
  double mu;
  double sigma;
};

/// Mixture component parameters for (w, h, t).
struct HouseRocketComponent {
  TruncatedNormalParams w, h, t;
};

inline constexpr HouseRocketComponent kHouseComponent{{10.0, 5.0}, {30.0, 10.0}, {8.0, 2.0}};
inline constexpr HouseRocketComponent kRocketComponent{{30.0, 10.0}, {30.0, 10.0}, {10.0, 2.0}};

/// Class labels used by the dataset and the classifier (c in the generative process).
inline constexpr int kHouseLabel = 0;
inline constexpr int kRocketLabel = 1;

struct LabeledLatent {
  HouseRocketLatent z;
  int label;
};

/// c ~ Ber(0.5), then (w, h, t) from the chosen component. Returns c as the label.
LabeledLatent house_rocket_sample_labeled(Rng& rng);
HouseRocketLatent house_rocket_sample_prior(Rng& rng);

/// Log density of one component at z; -inf off the positive orthant.
double house_rocket_component_log_density(const HouseRocketLatent& z, const HouseRocketComponent& c);
/// Mixture log density with c marginalized (log-sum-exp over both components).
double house_rocket_log_prior(const HouseRocketLatent& z);
/// The more likely mixture component for z (kHouseLabel or kRocketLabel).
int house_rocket_component_label(const HouseRocketLatent& z);

Image render_house_rocket(const HouseRocketLatent& z);

class HouseRocketWorld final : public WorldModel {
 public:
  std::string name() const override { return "house-rocket"; }
  std::size_t latent_dim() const override { return 3; }
  int image_width() const override;
  int image_height() const override;
  std::vector<double> sample_prior(Rng& rng) const override;
  double log_prior(std::span<const double> z) const override;
  Image reconstruct(std::span<const double> z) const override;
};

}  // namespace levelset
