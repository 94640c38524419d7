#include "levelset/worlds/house_rocket.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "levelset/numerics/distributions.hpp"
#include "levelset/worlds/render.hpp"

namespace levelset {

HouseRocketLatent HouseRocketLatent::from(std::span<const double> z) {
  if (z.size() != 3) throw std::invalid_argument("HouseRocketLatent: expected 3 components, got " + std::to_string(z.size()));
  return {z[0], z[1], z[2]};
}

LabeledLatent house_rocket_sample_labeled(Rng& rng) {
  const int label = rng.uniform() < 0.5 ? kHouseLabel : kRocketLabel;
  const HouseRocketComponent& c = label == kHouseLabel ? kHouseComponent : kRocketComponent;
  HouseRocketLatent z;
  z.w = truncated_normal_sample(c.w.mu, c.w.sigma, rng);
  z.h = truncated_normal_sample(c.h.mu, c.h.sigma, rng);
  z.t = truncated_normal_sample(c.t.mu, c.t.sigma, rng);
  return {z, label};
}

HouseRocketLatent house_rocket_sample_prior(Rng& rng) { return house_rocket_sample_labeled(rng).z; }

double house_rocket_component_log_density(const HouseRocketLatent& z, const HouseRocketComponent& c) {
  return truncated_normal_logpdf(z.w, c.w.mu, c.w.sigma) + truncated_normal_logpdf(z.h, c.h.mu, c.h.sigma) +
         truncated_normal_logpdf(z.t, c.t.mu, c.t.sigma);
}

double house_rocket_log_prior(const HouseRocketLatent& z) {
  if (!(z.w > 0.0) || !(z.h > 0.0) || !(z.t > 0.0)) return -std::numeric_limits<double>::infinity();
  return -std::numbers::ln2 + log_add_exp(house_rocket_component_log_density(z, kHouseComponent),
                                          house_rocket_component_log_density(z, kRocketComponent));
}

int house_rocket_component_label(const HouseRocketLatent& z) {
  return house_rocket_component_log_density(z, kHouseComponent) >= house_rocket_component_log_density(z, kRocketComponent)
             ? kHouseLabel
             : kRocketLabel;
}

Image render_house_rocket(const HouseRocketLatent& z) {
  return render::gaussian_blur(render::house_rocket_mask(z.w, z.h, z.t), render::kBlurSigma);
}

int HouseRocketWorld::image_width() const { return render::kCanvasSize; }
int HouseRocketWorld::image_height() const { return render::kCanvasSize; }

std::vector<double> HouseRocketWorld::sample_prior(Rng& rng) const {
  const auto a = house_rocket_sample_prior(rng).as_array();
  return {a.begin(), a.end()};
}

double HouseRocketWorld::log_prior(std::span<const double> z) const { return house_rocket_log_prior(HouseRocketLatent::from(z)); }

Image HouseRocketWorld::reconstruct(std::span<const double> z) const { return render_house_rocket(HouseRocketLatent::from(z)); }

}  // namespace levelset
