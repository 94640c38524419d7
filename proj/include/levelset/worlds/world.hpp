#pragma once

#include <span>
#include <string>
#include <vector>

#include "levelset/numerics/rng.hpp"
#include "levelset/numerics/simplex.hpp"

namespace levelset {

/// Generative world: a prior over latent vectors plus a deterministic
/// reconstruction g: Z -> X. Implementations are immutable after construction
/// and safe to share between sampler threads.
class WorldModel {
 public:
  virtual ~WorldModel() = default;

  virtual std::string name() const = 0;
  virtual std::size_t latent_dim() const = 0;
  virtual int image_width() const = 0;
  virtual int image_height() const = 0;

  virtual std::vector<double> sample_prior(Rng& rng) const = 0;
  /// Finite exactly on the prior support, -inf elsewhere.
  virtual double log_prior(std::span<const double> z) const = 0;
  virtual Image reconstruct(std::span<const double> z) const = 0;
};

}  // namespace levelset
