#include "levelset/worlds/circle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "levelset/numerics/distributions.hpp"
#include "levelset/worlds/render.hpp"

namespace levelset {

CircleLatent CircleLatent::from(std::span<const double> z) {
  if (z.size() != 6) throw std::invalid_argument("CircleLatent: expected 6 components, got " + std::to_string(z.size()));
  return {{z[0], z[1], z[2]}, z[3], z[4], z[5]};
}

CircleLatent circle_sample_prior(Rng& rng) {
  CircleLatent z;
  z.shape = house_rocket_sample_prior(rng);
  z.r = truncated_normal_sample(kCircleRadius.mu, kCircleRadius.sigma, rng);
  z.cx = rng.uniform(kCircleCenterLo, kCircleCenterHi);
  z.cy = rng.uniform(kCircleCenterLo, kCircleCenterHi);
  return z;
}

double circle_world_log_prior(const CircleLatent& z) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  const auto in_range = [](double v) { return v >= kCircleCenterLo && v <= kCircleCenterHi; };
  if (!in_range(z.cx) || !in_range(z.cy) || !(z.r > 0.0)) return kNegInf;
  const double shape = house_rocket_log_prior(z.shape);
  if (shape == kNegInf) return kNegInf;
  const double log_uniform = -std::log(kCircleCenterHi - kCircleCenterLo);
  return shape + truncated_normal_logpdf(z.r, kCircleRadius.mu, kCircleRadius.sigma) + 2.0 * log_uniform;
}

Image render_with_circle(const CircleLatent& z) {
  Image mask = render::house_rocket_mask(z.shape.w, z.shape.h, z.shape.t);
  render::fill_circle(mask, z.cx, z.cy, z.r);
  return render::gaussian_blur(mask, render::kBlurSigma);
}

int CircleWorld::image_width() const { return render::kCanvasSize; }
int CircleWorld::image_height() const { return render::kCanvasSize; }

std::vector<double> CircleWorld::sample_prior(Rng& rng) const {
  const auto a = circle_sample_prior(rng).as_array();
  return {a.begin(), a.end()};
}

double CircleWorld::log_prior(std::span<const double> z) const { return circle_world_log_prior(CircleLatent::from(z)); }

Image CircleWorld::reconstruct(std::span<const double> z) const { return render_with_circle(CircleLatent::from(z)); }

}  // namespace levelset
