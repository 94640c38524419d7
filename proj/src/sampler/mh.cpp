#include "levelset/sampler/mh.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "levelset/parallel.hpp"

namespace levelset {
namespace {

constexpr std::uint64_t kResampleStream = std::numeric_limits<std::uint64_t>::max();

}  // namespace

void SamplerConfig::validate(std::size_t num_classes) const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("sampler: alpha must be positive");
  if (num_particles <= 0) throw std::invalid_argument("sampler: number of particles must be positive");
  if (num_steps < 0) throw std::invalid_argument("sampler: number of steps must be non-negative");
  if (!(proposal_scale > 0.0) || !std::isfinite(proposal_scale)) throw std::invalid_argument("sampler: proposal scale k must be positive");
  if (resample_count <= 0) throw std::invalid_argument("sampler: resample count n must be positive");
  if (resample_count > num_particles) throw std::invalid_argument("sampler: resample count n must not exceed particles N");
  if (threads <= 0) throw std::invalid_argument("sampler: threads must be positive");
  if (trace_every <= 0) throw std::invalid_argument("sampler: trace stride must be positive");
  if (max_init_attempts <= 0) throw std::invalid_argument("sampler: init attempts must be positive");
  if (num_classes > 0 && !(prediction_floor > 0.0 && prediction_floor < 1.0 / static_cast<double>(num_classes))) {
    throw std::invalid_argument("sampler: prediction floor must lie in (0, 1/L)");
  }
}

MhStepResult mh_step(std::vector<double>& z, double current_log_density, const LogDensity& target,
                     double proposal_scale, Rng& rng) {
  const double step = std::sqrt(proposal_scale);
  std::vector<double> proposal(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) proposal[i] = z[i] + step * rng.normal();
  const double proposed = target(proposal);
  const double log_ratio = proposed - current_log_density;
  // Symmetric proposal: no Hastings correction. NaN and -inf proposals are rejected.
  const bool accept = log_ratio >= 0.0 || std::log(rng.uniform_open()) < log_ratio;
  if (accept && !std::isnan(proposed)) {
    z = std::move(proposal);
    return {true, proposed};
  }
  return {false, current_log_density};
}

Chain run_chain(const LogDensity& target, const PriorSampler& prior, const SamplerConfig& cfg, Rng rng) {
  Chain chain;
  std::vector<double> z;
  double logp = -std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt < cfg.max_init_attempts; ++attempt) {
    z = prior(rng);
    logp = target(z);
    if (std::isfinite(logp)) break;
  }
  if (!std::isfinite(logp)) {
    throw std::runtime_error("prior support unreachable: no finite log-posterior after " +
                             std::to_string(cfg.max_init_attempts) + " prior draws");
  }
  if (cfg.keep_trajectories) {
    chain.trajectory.reserve(static_cast<std::size_t>(cfg.num_steps) + 1);
    chain.trajectory.push_back(z);
    chain.trajectory_log_density.push_back(logp);
  }
  chain.trace.push_back(logp);
  for (int t = 1; t <= cfg.num_steps; ++t) {
    const MhStepResult r = mh_step(z, logp, target, cfg.proposal_scale, rng);
    logp = r.log_density;
    if (r.accepted) ++chain.accepted;
    if (cfg.keep_trajectories) {
      chain.trajectory.push_back(z);
      chain.trajectory_log_density.push_back(logp);
    }
    if (t % cfg.trace_every == 0) chain.trace.push_back(logp);
  }
  chain.steps = static_cast<std::size_t>(cfg.num_steps);
  chain.final_state = std::move(z);
  chain.final_log_density = logp;
  return chain;
}

std::vector<std::size_t> resample_indices(std::size_t population, std::size_t n, bool with_replacement, Rng& rng) {
  if (population == 0) throw std::invalid_argument("resample_indices: empty population");
  std::vector<std::size_t> out;
  out.reserve(n);
  if (with_replacement) {
    for (std::size_t i = 0; i < n; ++i) out.push_back(static_cast<std::size_t>(rng.below(population)));
    return out;
  }
  if (n > population) throw std::invalid_argument("resample_indices: n exceeds population without replacement");
  std::vector<std::size_t> perm(population);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(population - i));
    std::swap(perm[i], perm[j]);
    out.push_back(perm[i]);
  }
  return out;
}

ParticleRun run_particles(const LogDensity& target, const PriorSampler& prior, const SamplerConfig& cfg) {
  cfg.validate(0);
  const Rng master(cfg.seed);
  ParticleRun run;
  run.chains.resize(static_cast<std::size_t>(cfg.num_particles));
  parallel_for(run.chains.size(), cfg.threads,
               [&](std::size_t i) { run.chains[i] = run_chain(target, prior, cfg, master.split(i)); });
  Rng resample_rng = master.split(kResampleStream);
  run.selected = resample_indices(run.chains.size(), static_cast<std::size_t>(cfg.resample_count),
                                  cfg.resample_with_replacement, resample_rng);
  return run;
}

}  // namespace levelset
