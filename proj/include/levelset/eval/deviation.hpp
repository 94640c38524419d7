#pragma once

#include <span>
#include <string>
#include <vector>

#include "levelset/numerics/simplex.hpp"
#include "levelset/sampler/level_set.hpp"
#include "levelset/sampler/target.hpp"

namespace levelset::eval {

/// Mean absolute per-class deviation of sampled predictions from the target:
///   delta = (1/n) (1/L) sum_i sum_l |p_l - p~_{i,l}|
struct DeviationReport {
  double delta = 0.0;
  std::vector<double> per_sample;  // (1/L) sum_l |p_l - p~_{i,l}|
  std::size_t n = 0;
  std::size_t num_classes = 0;

  double delta_percent() const { return 100.0 * delta; }
  /// Two-decimal percentage, e.g. "1.83%".
  std::string delta_percent_string() const;
};

DeviationReport deviation(std::span<const Simplex> predictions, const Simplex& target);
DeviationReport deviation(const SampleSet& samples, const TargetPrediction& target);

inline constexpr double kAmbiguityBandLo = 0.45;
inline constexpr double kAmbiguityBandHi = 0.55;

/// Max-class confidence statistics. Band counts are only meaningful for L = 2.
struct ConfidenceStats {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t n = 0;
  std::size_t in_band = 0;   // max-class confidence in [0.45, 0.55]
  std::size_t out_of_band = 0;
  bool binary = false;

  double band_fraction() const { return n ? static_cast<double>(in_band) / static_cast<double>(n) : 0.0; }
};

ConfidenceStats confidence_stats(std::span<const Simplex> predictions);
ConfidenceStats confidence_stats(const SampleSet& samples);

}  // namespace levelset::eval
