#include "levelset/eval/deviation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace levelset::eval {

std::string DeviationReport::delta_percent_string() const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", delta_percent());
  return buf;
}

DeviationReport deviation(std::span<const Simplex> predictions, const Simplex& target) {
  if (predictions.empty()) throw std::invalid_argument("deviation: empty sample set");
  DeviationReport r;
  r.n = predictions.size();
  r.num_classes = target.size();
  r.per_sample.reserve(r.n);
  double total = 0.0;
  for (const Simplex& p : predictions) {
    if (p.size() != target.size()) throw std::invalid_argument("deviation: prediction and target sizes differ");
    double s = 0.0;
    for (std::size_t l = 0; l < p.size(); ++l) s += std::abs(target[l] - p[l]);
    s /= static_cast<double>(r.num_classes);
    r.per_sample.push_back(s);
    total += s;
  }
  r.delta = total / static_cast<double>(r.n);
  return r;
}

DeviationReport deviation(const SampleSet& samples, const TargetPrediction& target) {
  const std::vector<Simplex> preds = samples.predictions();
  return deviation(preds, target.probs());
}

ConfidenceStats confidence_stats(std::span<const Simplex> predictions) {
  if (predictions.empty()) throw std::invalid_argument("confidence_stats: empty sample set");
  ConfidenceStats s;
  s.n = predictions.size();
  s.binary = predictions.front().size() == 2;
  s.min = 1.0;
  s.max = 0.0;
  double total = 0.0;
  for (const Simplex& p : predictions) {
    const double c = p.max();
    total += c;
    s.min = std::min(s.min, c);
    s.max = std::max(s.max, c);
    if (c >= kAmbiguityBandLo && c <= kAmbiguityBandHi) ++s.in_band;
  }
  s.out_of_band = s.n - s.in_band;
  s.mean = std::clamp(total / static_cast<double>(s.n), s.min, s.max);
  return s;
}

ConfidenceStats confidence_stats(const SampleSet& samples) {
  const std::vector<Simplex> preds = samples.predictions();
  return confidence_stats(preds);
}

}  // namespace levelset::eval
