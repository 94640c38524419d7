#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "levelset/numerics/rng.hpp"

namespace levelset {

struct SamplerConfig {
  double alpha = 10.0;              // Dirichlet concentration scale
  int num_particles = 100;          // N independent chains
  int num_steps = 1000;             // T MH steps per chain
  double proposal_scale = 0.25;     // k: proposal covariance is k * I
  int resample_count = 50;          // n <= N finals kept
  std::uint64_t seed = 0;
  double prediction_floor = 1e-6;   // epsilon clamp for predictions and targets
  int threads = 1;                  // worker cap; never changes results
  int trace_every = 10;             // log-posterior trace stride
  bool keep_trajectories = false;   // store every (z, log posterior) pair
  bool resample_with_replacement = true;  // test hook; false draws a permutation
  int max_init_attempts = 1000;

  /// Throws std::invalid_argument when a field is out of range. `num_classes`
  /// bounds the prediction floor to (0, 1/L).
  void validate(std::size_t num_classes) const;
};

/// Unnormalized log density over latent vectors; -inf off the support.
using LogDensity = std::function<double(std::span<const double>)>;
using PriorSampler = std::function<std::vector<double>(Rng&)>;

struct MhStepResult {
  bool accepted;
  double log_density;  // log density at the returned state
};

/// One random-walk Metropolis step: z* = z + N(0, k I), accepted with
/// probability min(1, exp(L(z*) - L(z))). Updates z in place on acceptance.
MhStepResult mh_step(std::vector<double>& z, double current_log_density, const LogDensity& target,
                     double proposal_scale, Rng& rng);

struct Chain {
  std::vector<double> final_state;
  double final_log_density = 0.0;
  std::size_t accepted = 0;
  std::size_t steps = 0;
  std::vector<double> trace;  // log density every trace_every steps, starting at step 0
  // Only filled when keep_trajectories is set: T + 1 entries each.
  std::vector<std::vector<double>> trajectory;
  std::vector<double> trajectory_log_density;

  double acceptance_rate() const { return steps ? static_cast<double>(accepted) / static_cast<double>(steps) : 0.0; }
};

/// Draws z0 from the prior until the target is finite (at most
/// cfg.max_init_attempts draws), then runs cfg.num_steps MH steps.
/// Throws std::runtime_error("prior support unreachable ...") if initialization fails.
Chain run_chain(const LogDensity& target, const PriorSampler& prior, const SamplerConfig& cfg, Rng rng);

struct ParticleRun {
  std::vector<Chain> chains;
  std::vector<std::size_t> selected;  // indices into chains, length resample_count
};

/// N chains, each on its own stream Rng(seed).split(i), followed by uniform
/// resampling of n finals on a dedicated stream. Bitwise independent of cfg.threads.
ParticleRun run_particles(const LogDensity& target, const PriorSampler& prior, const SamplerConfig& cfg);

/// n indices drawn uniformly from [0, N): with replacement, or a partial
/// Fisher-Yates permutation without.
std::vector<std::size_t> resample_indices(std::size_t population, std::size_t n, bool with_replacement, Rng& rng);

}  // namespace levelset
