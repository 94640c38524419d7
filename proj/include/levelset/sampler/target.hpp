#pragma once

#include <string>

#include "levelset/numerics/simplex.hpp"

namespace levelset {

enum class MnistTarget { ambiguous, one_vs_seven, eight_vs_nine };

/// Target prediction p on the simplex.
class TargetPrediction {
 public:
  explicit TargetPrediction(Simplex p, std::string label = "custom");

  /// p = [beta, 1 - beta]; beta must lie in (0, 1).
  static TargetPrediction binary(double beta);
  /// ambiguous: all 0.1; 1vs7 / 8vs9: the named pair at 0.46, the rest 0.01.
  static TargetPrediction mnist(MnistTarget kind);
  /// Parses "beta:<b>", "mnist:ambiguous", "mnist:1vs7", "mnist:8vs9" or "probs:<p0>,<p1>,...".
  static TargetPrediction parse(const std::string& spec);

  const Simplex& probs() const { return p_; }
  std::size_t num_classes() const { return p_.size(); }
  /// Spec string that parse() maps back to this target.
  const std::string& label() const { return label_; }
  /// Entries clamped to [floor, 1] and renormalized.
  Simplex clamped(double floor) const { return Simplex::clamp_renormalize(p_.values(), floor); }

 private:
  Simplex p_;
  std::string label_;
};

}  // namespace levelset
