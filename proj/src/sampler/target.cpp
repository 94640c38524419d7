#include "levelset/sampler/target.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace levelset {
namespace {

double parse_double(const std::string& text, const std::string& spec) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw std::invalid_argument("target: cannot parse number in '" + spec + "'");
  return v;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

TargetPrediction::TargetPrediction(Simplex p, std::string label) : p_(std::move(p)), label_(std::move(label)) {}

TargetPrediction TargetPrediction::binary(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("target: beta must lie in (0, 1)");
  return TargetPrediction(Simplex({beta, 1.0 - beta}), "beta:" + format_number(beta));
}

TargetPrediction TargetPrediction::mnist(MnistTarget kind) {
  std::vector<double> p(10, 0.01);
  std::string label;
  switch (kind) {
    case MnistTarget::ambiguous:
      std::fill(p.begin(), p.end(), 0.1);
      label = "mnist:ambiguous";
      break;
    case MnistTarget::one_vs_seven:
      p[1] = p[7] = 0.46;
      label = "mnist:1vs7";
      break;
    case MnistTarget::eight_vs_nine:
      p[8] = p[9] = 0.46;
      label = "mnist:8vs9";
      break;
  }
  return TargetPrediction(Simplex(std::move(p)), label);
}

TargetPrediction TargetPrediction::parse(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("target: expected 'kind:value', got '" + spec + "'");
  const std::string kind = spec.substr(0, colon);
  const std::string value = spec.substr(colon + 1);
  if (kind == "beta") return binary(parse_double(value, spec));
  if (kind == "mnist") {
    if (value == "ambiguous") return mnist(MnistTarget::ambiguous);
    if (value == "1vs7") return mnist(MnistTarget::one_vs_seven);
    if (value == "8vs9") return mnist(MnistTarget::eight_vs_nine);
    throw std::invalid_argument("target: unknown MNIST target '" + value + "'");
  }
  if (kind == "probs") {
    std::vector<double> p;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) p.push_back(parse_double(item, spec));
    return TargetPrediction(Simplex(std::move(p)), spec);
  }
  throw std::invalid_argument("target: unknown target kind '" + kind + "'");
}

}  // namespace levelset
