#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "levelset/numerics/distributions.hpp"
#include "unit/oracles.hpp"

using namespace levelset;

TEST_CASE("softmax examples") {
  const std::vector<double> zero{0.0, 0.0};
  CHECK(softmax(zero)[0] == doctest::Approx(0.5));
  const std::vector<double> threes{3.0, 3.0, 3.0};
  const Simplex thirds = softmax(threes);
  for (double p : thirds.values()) CHECK(p == doctest::Approx(1.0 / 3.0));
  // e / (e + 1), mpmath at 30 digits: 0.731058578630004879
  const std::vector<double> one_zero{1.0, 0.0};
  const Simplex s = softmax(one_zero);
  CHECK(std::abs(s[0] - 0.731058578630005) < 1e-12);
  CHECK(std::abs(s[1] - 0.268941421369995) < 1e-12);
}

TEST_CASE("softmax is stable for large logits and rejects non-finite input") {
  const std::vector<double> big{1e4, -1e4, 0.0};
  const Simplex s = softmax(big);
  CHECK(s[0] == doctest::Approx(1.0));
  CHECK(std::abs(std::accumulate(s.values().begin(), s.values().end(), 0.0) - 1.0) < 1e-9);
  const std::vector<double> bad{1.0, std::numeric_limits<double>::quiet_NaN()};
  CHECK_THROWS_AS(softmax(bad), std::invalid_argument);
  const std::vector<double> inf{1.0, std::numeric_limits<double>::infinity()};
  CHECK_THROWS_AS(softmax(inf), std::invalid_argument);
}

TEST_CASE("softmax output is always a simplex") {
  Rng rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> logits(1 + rng.below(12));
    for (double& v : logits) v = (rng.uniform() - 0.5) * 2e4;
    const Simplex s = softmax(logits);
    double sum = 0.0;
    for (double p : s.values()) {
      REQUIRE(p >= 0.0);
      sum += p;
    }
    REQUIRE(std::abs(sum - 1.0) < 1e-9);
  }
}

TEST_CASE("truncated normal sampling") {
  Rng rng(17);
  SUBCASE("always positive") {
    for (int i = 0; i < 20000; ++i) REQUIRE(truncated_normal_sample(10, 5, rng) > 0.0);
  }
  SUBCASE("negligible truncation") {
    const double v = truncated_normal_sample(1e6, 1e-3, rng);
    CHECK(v == doctest::Approx(1e6).epsilon(1e-6));
  }
  SUBCASE("mean matches the closed-form truncated mean within 1%") {
    const int n = 100000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += truncated_normal_sample(30, 10, rng);
    const double expected = oracle::truncnorm_mean(30, 10);
    CHECK(std::abs(sum / n - expected) / expected < 0.01);
  }
  SUBCASE("inverse-CDF fallback in the far tail") {
    // mu/sigma = -4: acceptance ~3e-5, exercises the fallback branch.
    const int n = 50000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = truncated_normal_sample(-4, 1, rng);
      REQUIRE(x > 0.0);
      sum += x;
    }
    const double expected = oracle::truncnorm_mean(-4, 1);
    CHECK(std::abs(sum / n - expected) / expected < 0.01);
  }
  SUBCASE("extreme tail") {
    for (int i = 0; i < 1000; ++i) REQUIRE(truncated_normal_sample(-100, 1, rng) > 0.0);
  }
  CHECK_THROWS_AS(truncated_normal_sample(0, 0, rng), std::invalid_argument);
  CHECK_THROWS_AS(truncated_normal_sample(0, -1, rng), std::invalid_argument);
}

TEST_CASE("truncated normal log density") {
  CHECK(truncated_normal_logpdf(-1, 10, 5) == -std::numeric_limits<double>::infinity());
  CHECK(truncated_normal_logpdf(0, 10, 5) == -std::numeric_limits<double>::infinity());
  // log(phi(0)/5) - log(1 - Phi(-2)); mpmath at 30 digits: -2.50536353630981
  CHECK(std::abs(truncated_normal_logpdf(10, 10, 5) - (-2.50536353630981)) < 1e-10);
  CHECK(std::abs(truncated_normal_logpdf(7.3, 4, 3) - std::log(oracle::truncnorm_pdf(7.3, 4, 3))) < 1e-12);
  const double mass = oracle::simpson([](double x) { return std::exp(truncated_normal_logpdf(x, 30, 10)); }, 1e-12, 200, 20000);
  CHECK(std::abs(mass - 1.0) < 1e-6);
  // Heavily truncated case stays normalized too.
  const double tail_mass = oracle::simpson([](double x) { return std::exp(truncated_normal_logpdf(x, -3, 1)); }, 1e-12, 20, 20000);
  CHECK(std::abs(tail_mass - 1.0) < 1e-4);
  CHECK_THROWS_AS(truncated_normal_logpdf(1, 0, 0), std::invalid_argument);
}

TEST_CASE("dirichlet log density") {
  CHECK(std::abs(dirichlet_logpdf(Simplex({0.3, 0.7}), std::vector<double>{1, 1})) < 1e-14);
  // Beta(2,2) at 0.5 = Gamma(4)/Gamma(2)^2 * 0.25 = 1.5
  CHECK(std::abs(dirichlet_logpdf(Simplex({0.5, 0.5}), std::vector<double>{2, 2}) - std::log(1.5)) < 1e-12);
  CHECK(std::abs(dirichlet_logpdf(Simplex({0.5, 0.5}), std::vector<double>{2, 2}) - 0.405465) < 1e-6);
  CHECK(std::abs(dirichlet_logpdf(Simplex({0.2, 0.8}), std::vector<double>{3.5, 1.5}) -
                 std::log(oracle::beta_pdf(0.2, 3.5, 1.5))) < 1e-12);

  SUBCASE("exchangeable under permutation") {
    const std::vector<double> p{0.1, 0.2, 0.3, 0.4};
    std::vector<double> a{0.5, 2.0, 3.0, 7.5};
    std::vector<int> idx{0, 1, 2, 3};
    const double base = dirichlet_logpdf(Simplex(p), a);
    while (std::next_permutation(idx.begin(), idx.end())) {
      std::vector<double> pp(4), aa(4);
      for (int i = 0; i < 4; ++i) {
        pp[i] = p[idx[i]];
        aa[i] = a[idx[i]];
      }
      REQUIRE(std::abs(dirichlet_logpdf(Simplex(pp), aa) - base) < 1e-12);
    }
  }
  SUBCASE("integrates to one at d = 2") {
    const double mass = oracle::simpson(
        [](double x) { return std::exp(dirichlet_logpdf(Simplex({x, 1.0 - x}), std::vector<double>{2.5, 4.0})); }, 1e-9,
        1.0 - 1e-9, 20000);
    CHECK(std::abs(mass - 1.0) < 1e-4);
  }
  CHECK_THROWS_AS(dirichlet_logpdf(Simplex({0.5, 0.5}), std::vector<double>{1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(dirichlet_logpdf(Simplex({0.5, 0.5}), std::vector<double>{1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(dirichlet_logpdf(Simplex({0.5, 0.5}), std::vector<double>{1, -2}), std::invalid_argument);
  CHECK_THROWS_AS(dirichlet_logpdf(Simplex({1.0, 0.0}), std::vector<double>{1, 2}), std::invalid_argument);
}

TEST_CASE("clamped targets with exact zeros give finite densities") {
  const Simplex clamped = Simplex::clamp_renormalize(std::vector<double>{1.0, 0.0}, 1e-6);
  CHECK(clamped[1] > 0.0);
  CHECK(std::isfinite(dirichlet_logpdf(clamped, std::vector<double>{5, 5})));
}

TEST_CASE("dirichlet sampling") {
  Rng rng(23);
  const int n = 100000;
  SUBCASE("symmetric mean") {
    double m0 = 0;
    for (int i = 0; i < n; ++i) m0 += dirichlet_sample(std::vector<double>{1, 1}, rng)[0];
    CHECK(std::abs(m0 / n - 0.5) < 0.01);
  }
  SUBCASE("mean a_i / sum a") {
    double m0 = 0;
    for (int i = 0; i < n; ++i) m0 += dirichlet_sample(std::vector<double>{10, 30}, rng)[0];
    CHECK(std::abs(m0 / n - 0.25) < 0.01);
  }
  SUBCASE("normalized, including tiny concentrations") {
    for (int i = 0; i < 2000; ++i) {
      const Simplex s = dirichlet_sample(std::vector<double>{0.01, 0.3, 5.0}, rng);
      double sum = 0;
      for (double v : s.values()) sum += v;
      REQUIRE(std::abs(sum - 1.0) < 1e-9);
    }
  }
  CHECK_THROWS_AS(dirichlet_sample(std::vector<double>{1, 0}, rng), std::invalid_argument);
}

TEST_CASE("dirichlet sampler agrees with its density (histogram, d = 2)") {
  Rng rng(99);
  const std::vector<double> a{2.0, 3.0};
  const int n = 1000000, bins = 20;
  std::vector<int> counts(bins, 0);
  for (int i = 0; i < n; ++i) {
    const double x = dirichlet_sample(a, rng)[0];
    ++counts[std::min(bins - 1, static_cast<int>(x * bins))];
  }
  for (int b = 2; b < bins - 2; ++b) {
    const double lo = static_cast<double>(b) / bins, hi = static_cast<double>(b + 1) / bins;
    const double expected =
        oracle::simpson([&](double x) { return std::exp(dirichlet_logpdf(Simplex({x, 1 - x}), a)); }, lo, hi, 200);
    const double observed = static_cast<double>(counts[b]) / n;
    CHECK(std::abs(observed - expected) / expected < 0.05);
  }
}

TEST_CASE("gamma sampler moments for shapes below and above one") {
  Rng rng(8);
  for (double shape : {0.3, 1.0, 4.5}) {
    const int n = 200000;
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
      const double g = gamma_sample(shape, rng);
      s += g;
      s2 += g * g;
    }
    const double mean = s / n, var = s2 / n - mean * mean;
    CHECK(mean == doctest::Approx(shape).epsilon(0.02));
    CHECK(var == doctest::Approx(shape).epsilon(0.05));
  }
}

TEST_CASE("standard normal multivariate log density") {
  const std::vector<double> zero(5, 0.0);
  // -(5/2) log(2 pi), mpmath: -4.59469266602336
  CHECK(std::abs(std_normal_logpdf(zero) - (-4.59469266602336)) < 1e-12);
  const std::vector<double> e1{1, 0, 0, 0, 0};
  CHECK(std::abs(std_normal_logpdf(e1) - (std_normal_logpdf(zero) - 0.5)) < 1e-14);
  const std::vector<double> z{0.3, -1.2, 2.0};
  const std::vector<double> neg{-0.3, 1.2, -2.0};
  CHECK(std_normal_logpdf(z) == std_normal_logpdf(neg));
  const double mass = oracle::simpson(
      [](double x) {
        return oracle::simpson([x](double y) { return std::exp(std_normal_logpdf(std::vector<double>{x, y})); }, -9, 9, 400);
      },
      -9, 9, 400);
  CHECK(std::abs(mass - 1.0) < 1e-4);
  const std::vector<double> bad{std::numeric_limits<double>::infinity()};
  CHECK_THROWS_AS(std_normal_logpdf(bad), std::invalid_argument);
}

TEST_CASE("samplers are reproducible for a fixed seed") {
  Rng a(5), b(5);
  for (int i = 0; i < 100; ++i) {
    REQUIRE(truncated_normal_sample(3, 2, a) == truncated_normal_sample(3, 2, b));
    REQUIRE(dirichlet_sample(std::vector<double>{0.5, 2}, a) == dirichlet_sample(std::vector<double>{0.5, 2}, b));
  }
}

TEST_CASE("log_add_exp") {
  const double ninf = -std::numeric_limits<double>::infinity();
  CHECK(log_add_exp(ninf, 1.0) == 1.0);
  CHECK(log_add_exp(0.0, 0.0) == doctest::Approx(std::log(2.0)));
  CHECK(log_add_exp(-1000.0, -1000.0) == doctest::Approx(-1000.0 + std::log(2.0)));
}

TEST_CASE("std_normal_logcdf is continuous across the series switch") {
  CHECK(std_normal_logcdf(-36.999) == doctest::Approx(std_normal_logcdf(-37.001)).epsilon(1e-3));
  CHECK(std::abs(std_normal_logcdf(-2.0) - std::log(oracle::Phi(-2.0))) < 1e-14);
}
