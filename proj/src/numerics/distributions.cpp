#include "levelset/numerics/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/erf.hpp>

namespace levelset {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_positive_sigma(double sigma, const char* who) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument(std::string(who) + ": sigma must be positive and finite");
  }
}

// Upper-tail probability Q(a) = 1 - Phi(a).
double std_normal_sf(double a) { return 0.5 * std::erfc(a / std::numbers::sqrt2); }

// Robert (1995) exponential rejection for the standard normal restricted to (a, inf), a > 0.
double tail_exponential_rejection(double a, Rng& rng) {
  const double lambda = 0.5 * (a + std::sqrt(a * a + 4.0));
  for (;;) {
    const double x = a - std::log(rng.uniform_open()) / lambda;
    const double d = x - lambda;
    if (std::log(rng.uniform_open()) <= -0.5 * d * d) return x;
  }
}

}  // namespace

Simplex softmax(std::span<const double> logits) {
  if (logits.empty()) throw std::invalid_argument("softmax: empty input");
  double hi = kNegInf;
  for (double v : logits) {
    if (!std::isfinite(v)) throw std::invalid_argument("softmax: non-finite logit");
    hi = std::max(hi, v);
  }
  std::vector<double> out(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - hi);
    sum += out[i];
  }
  for (double& v : out) v /= sum;
  return Simplex(std::move(out));
}

double std_normal_logcdf(double x) {
  // erfc keeps full relative accuracy until it underflows near x = -37.
  if (x > -37.0) return std::log(0.5 * std::erfc(-x / std::numbers::sqrt2));
  // Mills-ratio asymptotic series beyond that.
  const double x2 = x * x;
  double term = 1.0, series = 1.0;
  for (int k = 1; k < 12; ++k) {
    term *= -(2.0 * k - 1.0) / x2;
    series += term;
  }
  return -0.5 * x2 - 0.5 * std::log(2.0 * std::numbers::pi) - std::log(-x) + std::log(series);
}

double truncated_normal_sample(double mu, double sigma, Rng& rng) {
  require_positive_sigma(sigma, "truncated_normal_sample");
  const double lower = -mu / sigma;  // standardized truncation point
  const double acceptance = std_normal_sf(lower);
  if (acceptance >= 0.01) {
    for (;;) {
      const double x = mu + sigma * rng.normal();
      if (x > 0.0) return x;
    }
  }
  double standardized;
  if (acceptance > 1e-300 && lower < 30.0) {
    // Inverse CDF of the upper tail: Q^{-1}(v) for v uniform on (0, Q(lower)).
    const double v = rng.uniform_open() * acceptance;
    standardized = std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * v);
    standardized = std::max(standardized, lower);
  } else {
    standardized = tail_exponential_rejection(lower, rng);
  }
  const double x = mu + sigma * standardized;
  return x > 0.0 ? x : std::numeric_limits<double>::min();
}

double truncated_normal_logpdf(double x, double mu, double sigma) {
  require_positive_sigma(sigma, "truncated_normal_logpdf");
  if (!(x > 0.0)) return kNegInf;
  const double u = (x - mu) / sigma;
  const double log_phi = -0.5 * u * u - 0.5 * std::log(2.0 * std::numbers::pi);
  // 1 - Phi(-mu/sigma) = Phi(mu/sigma)
  return log_phi - std::log(sigma) - std_normal_logcdf(mu / sigma);
}

double gamma_sample(double shape, Rng& rng) {
  if (!(shape > 0.0) || !std::isfinite(shape)) {
    throw std::invalid_argument("gamma_sample: shape must be positive and finite");
  }
  if (shape < 1.0) {
    const double boosted = gamma_sample(shape + 1.0, rng);
    return boosted * std::pow(rng.uniform_open(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform_open();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double dirichlet_logpdf(const Simplex& p, std::span<const double> alpha) {
  if (p.size() != alpha.size()) throw std::invalid_argument("dirichlet_logpdf: dimension mismatch");
  double sum_alpha = 0.0, result = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const double a = alpha[i];
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw std::invalid_argument("dirichlet_logpdf: concentration entries must be positive");
    }
    if (!(p[i] > 0.0)) {
      throw std::invalid_argument("dirichlet_logpdf: point must be strictly inside the simplex");
    }
    sum_alpha += a;
    result += (a - 1.0) * std::log(p[i]) - std::lgamma(a);
  }
  return result + std::lgamma(sum_alpha);
}

Simplex dirichlet_sample(std::span<const double> alpha, Rng& rng) {
  if (alpha.empty()) throw std::invalid_argument("dirichlet_sample: empty concentration");
  std::vector<double> draws(alpha.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (!(alpha[i] > 0.0)) throw std::invalid_argument("dirichlet_sample: concentration entries must be positive");
    draws[i] = gamma_sample(alpha[i], rng);
    sum += draws[i];
  }
  if (!(sum > 0.0)) {
    // Every gamma underflowed (tiny concentrations): put the mass on the largest alpha.
    std::fill(draws.begin(), draws.end(), 0.0);
    draws[static_cast<std::size_t>(std::max_element(alpha.begin(), alpha.end()) - alpha.begin())] = 1.0;
    return Simplex(std::move(draws));
  }
  for (double& d : draws) d /= sum;
  // Re-normalize once more so the sum is exact to rounding.
  double resum = 0.0;
  for (double d : draws) resum += d;
  for (double& d : draws) d /= resum;
  return Simplex(std::move(draws));
}

double std_normal_logpdf(std::span<const double> z) {
  double sq = 0.0;
  for (double v : z) {
    if (!std::isfinite(v)) throw std::invalid_argument("std_normal_logpdf: non-finite input");
    sq += v * v;
  }
  return -0.5 * static_cast<double>(z.size()) * std::log(2.0 * std::numbers::pi) - 0.5 * sq;
}

double log_add_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(-std::abs(a - b)));
}

}  // namespace levelset
