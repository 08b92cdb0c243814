#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "tripois/rng.hpp"
#include "tripois/statistics.hpp"

using namespace tripois;

TEST(RunningStats, MergeMatchesSequential) {
  RunningStats all, a, b;
  for (int i = 0; i < 100; ++i) {
    const double x = std::sin(i) * 10;
    all.add(x);
    (i < 37 ? a : b).add(x);
  }
  a.merge(b);
  EXPECT_EQ(a.count(), all.count());
  EXPECT_NEAR(a.mean(), all.mean(), 1e-13);
  EXPECT_NEAR(a.variance(), all.variance(), 1e-12);
  EXPECT_NEAR(all.standard_error(), std::sqrt(all.variance() / 100), 1e-15);
}

TEST(Ks, Examples) {
  const double rate = 3.0;
  const double med[] = {std::log(2.0) / rate};
  EXPECT_NEAR(ks_exponential(med, rate).d, 0.5, 1e-15);
  const double zeros[] = {0.0, 0.0, 0.0};
  EXPECT_DOUBLE_EQ(ks_exponential(zeros, rate).d, 1.0);
  RngStream rng(1, 0);
  std::vector<double> xs;
  for (int i = 0; i < 10000; ++i) xs.push_back(-std::log(rng.uniform_open()) / rate);
  const auto ks = ks_exponential(xs, rate);
  EXPECT_LT(ks.d, 1.63 / 100.0);
  EXPECT_GT(ks.p_approx, 0.01);
  EXPECT_GT(ks_exponential(xs, 2 * rate).d, 0.1);
}

TEST(Ks, PValue) {
  // Kolmogorov distribution: P(K > 1.358) = 0.05 asymptotically.
  EXPECT_NEAR(kolmogorov_p_value(1.358 / std::sqrt(1e6), 1000000), 0.05, 1e-3);
  EXPECT_EQ(kolmogorov_p_value(0.0, 100), 1.0);
  EXPECT_GE(kolmogorov_p_value(1.0, 100), 0.0);
}

TEST(Poisson, Pmf) {
  EXPECT_NEAR(poisson_pmf(0, std::log(2.0)), 0.5, 1e-15);
  EXPECT_NEAR(poisson_pmf(3, 2.0), std::exp(-2.0) * 8 / 6, 1e-15);
  EXPECT_EQ(poisson_pmf(0, 0.0), 1.0);
  EXPECT_EQ(poisson_pmf(2, 0.0), 0.0);
}

TEST(Tv, Examples) {
  const std::uint64_t zeros[] = {0, 0, 0, 0};
  EXPECT_NEAR(tv_to_poisson(zeros, 0.0), 0.0, 1e-15);
  EXPECT_NEAR(tv_to_poisson(zeros, std::log(2.0)), 0.5, 1e-15);
  // Poisson(4) draws by inversion.
  RngStream rng(2, 0);
  std::vector<std::uint64_t> counts;
  for (int i = 0; i < 10000; ++i) {
    double u = rng.uniform(), p = std::exp(-4.0), c = p;
    std::uint64_t k = 0;
    while (u > c) {
      ++k;
      p *= 4.0 / k;
      c += p;
    }
    counts.push_back(k);
  }
  EXPECT_LE(tv_to_poisson(counts, 4.0), 0.02);
}

TEST(Misc, CorrelationMedianSlope) {
  const double a[] = {1, 2, 3, 4}, b[] = {2, 4, 6, 8}, c[] = {4, 3, 2, 1};
  EXPECT_NEAR(sample_correlation(a, b), 1.0, 1e-15);
  EXPECT_NEAR(sample_correlation(a, c), -1.0, 1e-15);
  EXPECT_EQ(median({3, 1, 2}), 2.0);
  EXPECT_EQ(median({4, 1, 3, 2}), 2.5);
  EXPECT_NEAR(fitted_slope(a, b), 2.0, 1e-15);
}
