#pragma once

#include <span>
#include <vector>

#include "levelset/numerics/rng.hpp"
#include "levelset/numerics/simplex.hpp"

namespace levelset {

/// Max-subtracted softmax. Throws std::invalid_argument on non-finite logits.
Simplex softmax(std::span<const double> logits);

/// log of the standard normal CDF, accurate far into the lower tail.
double std_normal_logcdf(double x);

/// Draw from No(mu, sigma^2) conditioned on (0, inf).
///
/// Plain rejection from the untruncated normal while the acceptance
/// probability is at least 1%; inverse-CDF on the truncated tail otherwise.
double truncated_normal_sample(double mu, double sigma, Rng& rng);

/// Log density of No(mu, sigma^2) truncated to (0, inf); -inf for x <= 0.
double truncated_normal_logpdf(double x, double mu, double sigma);

/// Gamma(shape, 1) draw via Marsaglia-Tsang, with the U^(1/shape) boost for shape < 1.
double gamma_sample(double shape, Rng& rng);

/// Log Dirichlet density at `p` with concentration `alpha`.
/// `p` must be strictly interior; callers clamp targets first (Simplex::clamp_renormalize).
double dirichlet_logpdf(const Simplex& p, std::span<const double> alpha);

Simplex dirichlet_sample(std::span<const double> alpha, Rng& rng);

/// Log density of MVN(0, I) in dim(z) dimensions.
double std_normal_logpdf(std::span<const double> z);

/// log(exp(a) + exp(b)) without overflow; handles -inf operands.
double log_add_exp(double a, double b);

}  // namespace levelset
