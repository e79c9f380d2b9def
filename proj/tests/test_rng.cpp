#include <gtest/gtest.h>

#include <cmath>

#include "lkc/rng.hpp"

using namespace lkc;

TEST(Rng, StreamsAreDeterministicAndDistinct) {
  Rng a(42, "hls");
  Rng b(42, "hls");
  Rng c(42, "fiber");
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.bits(), b.bits());
  EXPECT_NE(Rng(42, "hls").bits(), c.bits());
  EXPECT_NE(stream_seed(1, "x"), stream_seed(2, "x"));
}

TEST(Rng, SplitmixReferenceValue) {
  // First output of the reference splitmix64 generator seeded with 0.
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
}

TEST(Rng, UniformAndNormalMoments) {
  Rng r(7);
  const int n = 200000;
  double s = 0.0, s2 = 0.0, u = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = r.normal();
    s += x;
    s2 += x * x;
    const double v = r.uniform();
    ASSERT_GE(v, 0.0);
    ASSERT_LT(v, 1.0);
    u += v;
  }
  EXPECT_NEAR(s / n, 0.0, 0.01);
  EXPECT_NEAR(s2 / n, 1.0, 0.01);
  EXPECT_NEAR(u / n, 0.5, 0.005);
}

TEST(Rng, RandomFieldRespectsRange) {
  Rng r(9);
  const Field f = random_field(LatticeBox(2), r, -2.0, -1.0);
  for (double v : f.values()) {
    EXPECT_GE(v, -2.0);
    EXPECT_LT(v, -1.0);
  }
}
