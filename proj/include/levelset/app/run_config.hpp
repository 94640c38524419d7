#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "levelset/nn/train.hpp"
#include "levelset/sampler/mh.hpp"

namespace levelset::app {

struct GenDataOptions {
  std::size_t count = 16000;
  std::uint64_t seed = 0;
  std::filesystem::path out;
};

struct TrainOptions {
  std::filesystem::path data;
  std::filesystem::path out;
  nn::TrainConfig train;
  double holdout = 0.1;  // trailing fraction of the dataset kept for evaluation
};

struct SampleOptions {
  std::string world = "house-rocket";  // house-rocket | circle | decoder
  std::filesystem::path classifier;
  std::filesystem::path decoder;
  std::string target = "beta:0.5";
  std::optional<double> k;  // defaults per world
  SamplerConfig sampler;
  std::filesystem::path out;
};

struct EvalOptions {
  std::filesystem::path samples;
  std::string target;
  std::filesystem::path out;
};

struct CircleOptions {
  std::filesystem::path classifier;
  SamplerConfig sampler;
  std::filesystem::path out;
};

inline constexpr double kDefaultScaleShapes = 0.25;
inline constexpr double kDefaultScaleDecoder = 0.05;

/// Proposal scale for a world when --k is not given.
double default_proposal_scale(const std::string& world);

/// Sampler settings that determine results. The thread count is left out on
/// purpose so artifacts are identical for any worker count.
nlohmann::json sampler_json(const SamplerConfig& cfg);

/// Throws std::invalid_argument if `path` is not an existing regular file.
void require_file(const std::filesystem::path& path, const std::string& what);
/// Throws std::invalid_argument if `path` is not an existing directory.
void require_dir(const std::filesystem::path& path, const std::string& what);

}  // namespace levelset::app
