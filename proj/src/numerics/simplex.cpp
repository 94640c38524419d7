#include "levelset/numerics/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace levelset {

Simplex::Simplex(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("Simplex: empty probability vector");
  double sum = 0.0;
  for (double p : probs_) {
    if (!std::isfinite(p) || p < 0.0) {
      throw std::invalid_argument("Simplex: entries must be finite and non-negative");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw std::invalid_argument("Simplex: entries sum to " + std::to_string(sum) + ", expected 1");
  }
}

Simplex Simplex::clamp_renormalize(std::span<const double> probs, double floor) {
  if (!(floor > 0.0) || floor >= 1.0) throw std::invalid_argument("Simplex: floor must lie in (0, 1)");
  std::vector<double> out(probs.begin(), probs.end());
  double sum = 0.0;
  for (double& p : out) {
    if (!std::isfinite(p)) throw std::invalid_argument("Simplex: non-finite entry");
    p = std::clamp(p, floor, 1.0);
    sum += p;
  }
  for (double& p : out) p /= sum;
  return Simplex(std::move(out));
}

std::size_t Simplex::argmax() const {
  return static_cast<std::size_t>(std::max_element(probs_.begin(), probs_.end()) - probs_.begin());
}

double Simplex::max() const { return *std::max_element(probs_.begin(), probs_.end()); }

bool Image::valid() const {
  if (width <= 0 || height <= 0) return false;
  if (pixels.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) return false;
  return std::all_of(pixels.begin(), pixels.end(), [](double v) { return v >= 0.0 && v <= 1.0; });
}

}  // namespace levelset
