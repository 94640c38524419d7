#include <cmath>
#include <vector>

#include "doctest.h"
#include "levelset/numerics/rng.hpp"
#include "levelset/simd/kernels.hpp"

using namespace levelset;

namespace {

std::vector<double> random_vector(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.normal();
  return v;
}

}  // namespace

TEST_CASE("scalar and AVX2 kernels agree") {
  const simd::KernelTable* avx = simd::avx2_kernels();
  if (avx == nullptr || !simd::isa_supported(simd::Isa::avx2)) {
    MESSAGE("AVX2 not available; equivalence test skipped");
    return;
  }
  const simd::KernelTable& ref = simd::scalar_kernels();
  Rng rng(1);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 15u, 16u, 17u, 63u, 64u, 1000u, 4099u}) {
    CAPTURE(n);
    const auto a = random_vector(rng, n);
    const auto b = random_vector(rng, n);
    double mag = 0.0;
    for (std::size_t i = 0; i < n; ++i) mag += std::abs(a[i] * b[i]);
    CHECK(std::abs(ref.dot(a.data(), b.data(), n) - avx->dot(a.data(), b.data(), n)) <= 1e-13 * (mag + 1.0));

    auto y1 = random_vector(rng, n);
    auto y2 = y1;
    ref.axpy(0.37, a.data(), y1.data(), n);
    avx->axpy(0.37, a.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) REQUIRE(std::abs(y1[i] - y2[i]) <= 1e-15 * (std::abs(y1[i]) + 1.0));

    std::vector<double> r1(n), r2(n);
    ref.relu(a.data(), r1.data(), n);
    avx->relu(a.data(), r2.data(), n);
    CHECK(r1 == r2);
    ref.relu_backward(a.data(), b.data(), r1.data(), n);
    avx->relu_backward(a.data(), b.data(), r2.data(), n);
    CHECK(r1 == r2);
  }
}

TEST_CASE("unaligned spans") {
  Rng rng(2);
  auto a = random_vector(rng, 101);
  auto b = random_vector(rng, 101);
  double expected = 0.0;
  for (std::size_t i = 1; i < 101; ++i) expected += a[i] * b[i];
  const double got = simd::active().dot(a.data() + 1, b.data() + 1, 100);
  CHECK(got == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("active table reports a supported ISA") {
  CHECK(simd::isa_supported(simd::active().isa));
  CHECK(simd::isa_name(simd::Isa::scalar) == "scalar");
}
