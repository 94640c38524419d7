#include <set>
#include <vector>

#include "doctest.h"
#include "levelset/numerics/rng.hpp"

using levelset::Rng;

TEST_CASE("same seed gives the same stream") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) REQUIRE(a.next_u64() == b.next_u64());
  Rng c(43);
  Rng d(42);
  int same = 0;
  for (int i = 0; i < 100; ++i) same += c.next_u64() == d.next_u64();
  CHECK(same == 0);
}

TEST_CASE("stream is pinned across platforms") {
  // Frozen from this implementation; any change to the generator breaks reproducibility of stored runs.
  Rng r(0);
  const std::uint64_t first = r.next_u64();
  Rng again(0);
  CHECK(again.next_u64() == first);
  CHECK(first == 0x99EC5F36CB75F2B4ULL);
}

TEST_CASE("split streams do not depend on parent draws and differ by index") {
  Rng parent(7);
  Rng child_a = parent.split(3);
  for (int i = 0; i < 50; ++i) parent.next_u64();
  Rng child_b = parent.split(3);
  for (int i = 0; i < 100; ++i) REQUIRE(child_a.next_u64() == child_b.next_u64());

  std::set<std::uint64_t> firsts;
  for (std::uint64_t i = 0; i < 1000; ++i) firsts.insert(Rng(7).split(i).next_u64());
  CHECK(firsts.size() == 1000);
}

TEST_CASE("uniform and normal moments") {
  Rng r(11);
  const int n = 200000;
  double su = 0, sn = 0, sn2 = 0;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    su += u;
    const double z = r.normal();
    sn += z;
    sn2 += z * z;
  }
  CHECK(su / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(std::abs(sn / n) < 0.01);
  CHECK(sn2 / n == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("below is in range and roughly uniform") {
  Rng r(5);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) ++counts[r.below(7)];
  for (int c : counts) CHECK(std::abs(c - 10000) < 400);
  CHECK_THROWS(r.below(0));
}
