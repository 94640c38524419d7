#include "levelset/sampler/level_set.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "levelset/numerics/distributions.hpp"

namespace levelset {

LevelSetPosterior::LevelSetPosterior(const WorldModel& world, const nn::Classifier& clf, const TargetPrediction& target,
                                     double alpha, double floor)
    : world_(world), clf_(clf), target_(target.clamped(floor)), alpha_(alpha), floor_(floor) {
  if (target.num_classes() != clf.num_classes()) {
    throw std::invalid_argument("posterior: target has " + std::to_string(target.num_classes()) +
                                " classes but the classifier predicts " + std::to_string(clf.num_classes()));
  }
  if (world.image_width() != clf.image_width() || world.image_height() != clf.image_height()) {
    throw std::invalid_argument("posterior: world renders " + std::to_string(world.image_width()) + "x" +
                                std::to_string(world.image_height()) + " images but the classifier expects " +
                                std::to_string(clf.image_width()) + "x" + std::to_string(clf.image_height()));
  }
  if (!(alpha > 0.0)) throw std::invalid_argument("posterior: alpha must be positive");
}

double LevelSetPosterior::log_likelihood(const Simplex& prediction) const {
  const Simplex clamped = Simplex::clamp_renormalize(prediction.values(), floor_);
  std::vector<double> concentration(clamped.size());
  for (std::size_t i = 0; i < clamped.size(); ++i) concentration[i] = alpha_ * clamped[i];
  return dirichlet_logpdf(target_, concentration);
}

double LevelSetPosterior::operator()(std::span<const double> z) const {
  const double prior = world_.log_prior(z);
  if (prior == -std::numeric_limits<double>::infinity()) return prior;
  return prior + log_likelihood(clf_.predict(world_.reconstruct(z)));
}

double posterior_log_density(std::span<const double> z, const WorldModel& world, const nn::Classifier& clf,
                             const TargetPrediction& target, double alpha, double floor) {
  return LevelSetPosterior(world, clf, target, alpha, floor)(z);
}

std::vector<Simplex> SampleSet::predictions() const {
  std::vector<Simplex> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.prediction);
  return out;
}

SampleSet assemble_samples(const WorldModel& world, const nn::Classifier& clf, const ParticleRun& run) {
  SampleSet set;
  set.latent_dim = world.latent_dim();
  set.num_classes = clf.num_classes();
  double total = 0.0;
  for (const Chain& c : run.chains) {
    set.diagnostics.acceptance_rates.push_back(c.acceptance_rate());
    set.diagnostics.traces.push_back(c.trace);
    total += c.acceptance_rate();
  }
  set.diagnostics.mean_acceptance = run.chains.empty() ? 0.0 : total / static_cast<double>(run.chains.size());
  if (!run.chains.empty() && total == 0.0 && run.chains.front().steps > 0) {
    set.diagnostics.warnings.emplace_back("acceptance rate is 0 on every chain; the proposal scale k is likely too large");
  }
  for (std::size_t idx : run.selected) {
    const Chain& c = run.chains[idx];
    Sample s;
    s.z = c.final_state;
    s.image = world.reconstruct(s.z);
    s.prediction = clf.predict(s.image);
    s.log_posterior = c.final_log_density;
    s.chain_id = idx;
    set.samples.push_back(std::move(s));
  }
  return set;
}

SampleSet run_chains(const WorldModel& world, const nn::Classifier& clf, const TargetPrediction& target,
                     const SamplerConfig& cfg) {
  cfg.validate(clf.num_classes());
  const LevelSetPosterior posterior(world, clf, target, cfg.alpha, cfg.prediction_floor);
  const LogDensity density = [&posterior](std::span<const double> z) { return posterior(z); };
  const PriorSampler prior = [&world](Rng& rng) { return world.sample_prior(rng); };
  return assemble_samples(world, clf, run_particles(density, prior, cfg));
}

}  // namespace levelset
