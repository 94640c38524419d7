#pragma once

#include <span>
#include <string>
#include <vector>

#include "levelset/nn/classifier.hpp"
#include "levelset/sampler/mh.hpp"
#include "levelset/sampler/target.hpp"
#include "levelset/worlds/world.hpp"

namespace levelset {

/// Relaxed level-set posterior over latents:
///   log p(z) + log Dir(clamp(p); alpha * clamp(f(g(z))))
/// where clamp floors entries at `floor` and renormalizes. The reconstruction
/// and classifier are skipped when the prior is -inf.
class LevelSetPosterior {
 public:
  LevelSetPosterior(const WorldModel& world, const nn::Classifier& clf, const TargetPrediction& target, double alpha,
                    double floor);

  double operator()(std::span<const double> z) const;
  /// Dirichlet term alone for a given prediction.
  double log_likelihood(const Simplex& prediction) const;

 private:
  const WorldModel& world_;
  const nn::Classifier& clf_;
  Simplex target_;  // already clamped
  double alpha_;
  double floor_;
};

double posterior_log_density(std::span<const double> z, const WorldModel& world, const nn::Classifier& clf,
                             const TargetPrediction& target, double alpha, double floor = 1e-6);

struct Sample {
  std::vector<double> z;
  Image image;
  Simplex prediction;
  double log_posterior = 0.0;
  std::size_t chain_id = 0;
};

struct RunDiagnostics {
  std::vector<double> acceptance_rates;     // per chain
  std::vector<std::vector<double>> traces;  // per chain, every trace_every steps
  double mean_acceptance = 0.0;
  std::vector<std::string> warnings;
};

struct SampleSet {
  std::size_t latent_dim = 0;
  std::size_t num_classes = 0;
  std::vector<Sample> samples;
  RunDiagnostics diagnostics;

  std::vector<Simplex> predictions() const;
};

/// Full pipeline: N chains from the prior, T MH steps each, uniform resampling
/// of n finals, then reconstruction and prediction for every kept sample.
SampleSet run_chains(const WorldModel& world, const nn::Classifier& clf, const TargetPrediction& target,
                     const SamplerConfig& cfg);

/// Attach reconstructions and predictions to chosen chain finals.
SampleSet assemble_samples(const WorldModel& world, const nn::Classifier& clf, const ParticleRun& run);

}  // namespace levelset
