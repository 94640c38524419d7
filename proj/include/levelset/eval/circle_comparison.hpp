#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "levelset/nn/classifier.hpp"
#include "levelset/sampler/level_set.hpp"
#include "levelset/sampler/mh.hpp"
#include "levelset/sampler/target.hpp"

namespace levelset::eval {

/// Summary of one sampled set in one world.
struct WorldSummary {
  std::string world;
  std::size_t n = 0;
  /// Mean probability of the target's top class, or mean max-class confidence
  /// when the target has no unique top class (ambiguous targets).
  double mean_confidence = 0.0;
  double mean_max_confidence = 0.0;
  /// Fraction whose argmax equals the target's argmax; absent for tied targets.
  std::optional<double> target_agreement;
  /// Fraction whose argmax equals the generative label, i.e. the mixture
  /// component under which the sampled (w, h, t) is more likely.
  double label_accuracy = 0.0;
  double delta = 0.0;
  double mean_acceptance = 0.0;
};

struct CircleTargetResult {
  explicit CircleTargetResult(TargetPrediction t) : target(std::move(t)) {}

  TargetPrediction target;
  WorldSummary plain;
  WorldSummary circle;
  // All deltas are circle minus plain.
  double confidence_delta = 0.0;
  double max_confidence_delta = 0.0;
  double label_accuracy_delta = 0.0;
  std::optional<double> target_agreement_delta;
};

struct CircleComparison {
  std::vector<CircleTargetResult> results;
};

/// beta = 0.999 (houses), 0.001 (rockets), 0.5 (ambiguous).
std::vector<TargetPrediction> default_circle_targets();

WorldSummary summarize(const std::string& world, const SampleSet& samples, const TargetPrediction& target);

/// Samples each target in the plain house/rocket world and in the circle
/// world with the same classifier and sampler settings. Target t uses seed
/// cfg.seed + t in both worlds.
CircleComparison circle_comparison(const nn::Classifier& clf, const SamplerConfig& cfg,
                                   std::span<const TargetPrediction> targets);

}  // namespace levelset::eval
