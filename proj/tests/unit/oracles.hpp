#pragma once

// Test-only reference formulas. These are written directly from textbook
// closed forms and deliberately share no code with the library.

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

inline double phi(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }
inline double Phi(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// Density of N(mu, sigma^2) truncated to (0, inf).
inline double truncnorm_pdf(double x, double mu, double sigma) {
  if (x <= 0) return 0.0;
  return phi((x - mu) / sigma) / (sigma * (1.0 - Phi(-mu / sigma)));
}

/// Mean of N(mu, sigma^2) truncated to (0, inf).
inline double truncnorm_mean(double mu, double sigma) {
  const double a = -mu / sigma;
  return mu + sigma * phi(a) / (1.0 - Phi(a));
}

/// Composite Simpson rule on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

/// Beta(a, b) density via the gamma function.
inline double beta_pdf(double x, double a, double b) {
  return std::tgamma(a + b) / (std::tgamma(a) * std::tgamma(b)) * std::pow(x, a - 1) * std::pow(1 - x, b - 1);
}

/// House/rocket mixture density at (w, h, t), coded directly from the generative process.
inline double house_rocket_density(double w, double h, double t) {
  const double house = truncnorm_pdf(w, 10, 5) * truncnorm_pdf(h, 30, 10) * truncnorm_pdf(t, 8, 2);
  const double rocket = truncnorm_pdf(w, 30, 10) * truncnorm_pdf(h, 30, 10) * truncnorm_pdf(t, 10, 2);
  return 0.5 * house + 0.5 * rocket;
}

}  // namespace oracle
