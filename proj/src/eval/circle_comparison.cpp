#include "levelset/eval/circle_comparison.hpp"

#include <algorithm>

#include "levelset/eval/deviation.hpp"
#include "levelset/worlds/circle.hpp"
#include "levelset/worlds/house_rocket.hpp"

namespace levelset::eval {
namespace {

// Index of the unique largest entry, if there is one.
std::optional<std::size_t> unique_argmax(const Simplex& p) {
  const std::size_t top = p.argmax();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i != top && p[i] == p[top]) return std::nullopt;
  }
  return top;
}

}  // namespace

std::vector<TargetPrediction> default_circle_targets() {
  return {TargetPrediction::binary(0.999), TargetPrediction::binary(0.001), TargetPrediction::binary(0.5)};
}

WorldSummary summarize(const std::string& world, const SampleSet& samples, const TargetPrediction& target) {
  WorldSummary s;
  s.world = world;
  s.n = samples.samples.size();
  const auto top = unique_argmax(target.probs());
  std::size_t agree = 0, labeled = 0;
  double conf = 0.0, max_conf = 0.0;
  for (const Sample& smp : samples.samples) {
    const std::size_t pred = smp.prediction.argmax();
    max_conf += smp.prediction.max();
    conf += top ? smp.prediction[*top] : smp.prediction.max();
    if (top && pred == *top) ++agree;
    const int label = house_rocket_component_label(HouseRocketLatent{smp.z[0], smp.z[1], smp.z[2]});
    if (static_cast<int>(pred) == label) ++labeled;
  }
  const auto n = static_cast<double>(s.n);
  s.mean_confidence = conf / n;
  s.mean_max_confidence = max_conf / n;
  if (top) s.target_agreement = static_cast<double>(agree) / n;
  s.label_accuracy = static_cast<double>(labeled) / n;
  s.delta = deviation(samples, target).delta;
  s.mean_acceptance = samples.diagnostics.mean_acceptance;
  return s;
}

CircleComparison circle_comparison(const nn::Classifier& clf, const SamplerConfig& cfg,
                                   std::span<const TargetPrediction> targets) {
  const HouseRocketWorld plain_world;
  const CircleWorld circle_world;
  CircleComparison out;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    SamplerConfig run_cfg = cfg;
    run_cfg.seed = cfg.seed + t;
    const TargetPrediction& target = targets[t];
    CircleTargetResult r(target);
    r.plain = summarize(plain_world.name(), run_chains(plain_world, clf, target, run_cfg), target);
    r.circle = summarize(circle_world.name(), run_chains(circle_world, clf, target, run_cfg), target);
    r.confidence_delta = r.circle.mean_confidence - r.plain.mean_confidence;
    r.max_confidence_delta = r.circle.mean_max_confidence - r.plain.mean_max_confidence;
    r.label_accuracy_delta = r.circle.label_accuracy - r.plain.label_accuracy;
    if (r.plain.target_agreement && r.circle.target_agreement) {
      r.target_agreement_delta = *r.circle.target_agreement - *r.plain.target_agreement;
    }
    out.results.push_back(std::move(r));
  }
  return out;
}

}  // namespace levelset::eval
