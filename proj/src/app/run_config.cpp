#include "levelset/app/run_config.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

namespace levelset::app {

double default_proposal_scale(const std::string& world) {
  return world == "decoder" ? kDefaultScaleDecoder : kDefaultScaleShapes;
}

nlohmann::json sampler_json(const SamplerConfig& cfg) {
  return {
      {"alpha", cfg.alpha},
      {"particles", cfg.num_particles},
      {"steps", cfg.num_steps},
      {"k", cfg.proposal_scale},
      {"n", cfg.resample_count},
      {"seed", cfg.seed},
      {"floor", cfg.prediction_floor},
      {"trace_every", cfg.trace_every},
  };
}

void require_file(const std::filesystem::path& path, const std::string& what) {
  if (path.empty()) throw std::invalid_argument(what + " path is required");
  if (!std::filesystem::is_regular_file(path)) throw std::invalid_argument(what + " not found: " + path.string());
}

void require_dir(const std::filesystem::path& path, const std::string& what) {
  if (path.empty()) throw std::invalid_argument(what + " path is required");
  if (!std::filesystem::is_directory(path)) throw std::invalid_argument(what + " not found: " + path.string());
}

}  // namespace levelset::app
