#include <gtest/gtest.h>

#include <cmath>

#include "tripois/rng.hpp"
#include "tripois/statistics.hpp"

using namespace tripois;

// Known-answer vectors of the Philox4x32-10 reference implementation.
TEST(Philox, KnownAnswers) {
  using A = std::array<std::uint32_t, 4>;
  EXPECT_EQ(philox4x32_10(A{0, 0, 0, 0}, {0, 0}),
            (A{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(philox4x32_10(A{~0u, ~0u, ~0u, ~0u}, {~0u, ~0u}),
            (A{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(philox4x32_10(A{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                          {0xa4093822, 0x299f31d0}),
            (A{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(RngStream, Reproducible) {
  RngStream a(5, 3), b(5, 3);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
  RngStream c(5, 4);
  RngStream d(5, 3);
  int same = 0;
  for (int i = 0; i < 100; ++i) same += c.next_u64() == d.next_u64();
  EXPECT_EQ(same, 0);
}

TEST(RngStream, SubstreamsDifferFromParent) {
  const RngStream base(9, 0);
  RngStream s0 = base.substream(0), s1 = base.substream(1), p = base;
  const auto a = s0.next_u64(), b = s1.next_u64(), c = p.next_u64();
  EXPECT_NE(a, b);
  EXPECT_NE(a, c);
  RngStream s0again = base.substream(0);
  EXPECT_EQ(s0again.next_u64(), a);
}

TEST(RngStream, UniformAndNormalMoments) {
  RngStream rng(1, 0);
  RunningStats u, n, n2;
  for (int i = 0; i < 200000; ++i) {
    const double x = rng.uniform();
    ASSERT_GE(x, 0.0);
    ASSERT_LT(x, 1.0);
    u.add(x);
    const double z = rng.normal();
    n.add(z);
    n2.add(z * z);
  }
  EXPECT_NEAR(u.mean(), 0.5, 4 * u.standard_error());
  EXPECT_NEAR(n.mean(), 0.0, 4 * n.standard_error());
  EXPECT_NEAR(n2.mean(), 1.0, 4 * n2.standard_error());
}

TEST(RngStream, UniformOpenNeverZero) {
  RngStream rng(2, 0);
  for (int i = 0; i < 100000; ++i) {
    const double x = rng.uniform_open();
    ASSERT_GT(x, 0.0);
    ASSERT_LT(x, 1.0);
  }
}
