#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tripois/catalog.hpp"
#include "tripois/error.hpp"
#include "tripois/experiments.hpp"

using namespace tripois;
constexpr double kPi = std::numbers::pi;

namespace {

Measure square() { return Measure::uniform(catalog::unit_square()); }

SimConfig small_config() {
  SimConfig cfg;
  cfg.n = 60;
  cfg.replicates = 24;
  cfg.alphas = {0.5, 1.0, 2.0, 8.0};
  cfg.k_order = 5;
  cfg.seed = 99;
  return cfg;
}

// One moderately sized run shared by the statistical checks.
const SimResult& square_run() {
  static const SimResult r = [] {
    SimConfig cfg;
    cfg.n = 100;
    cfg.replicates = 1000;
    cfg.alphas = {0.25, 0.5, 1.0, 2.0, 4.0};
    cfg.k_order = 3;
    cfg.seed = 7;
    return run_simulation(cfg);
  }();
  return r;
}

bool same(const SimResult& a, const SimResult& b) {
  if (a.replicates.size() != b.replicates.size()) return false;
  for (std::size_t i = 0; i < a.replicates.size(); ++i) {
    const auto& x = a.replicates[i];
    const auto& y = b.replicates[i];
    if (x.scaled != y.scaled || x.counts != y.counts || x.diameter != y.diameter) return false;
  }
  return true;
}

}  // namespace

TEST(SimConfig, Validation) {
  SimConfig cfg = small_config();
  EXPECT_NO_THROW(validate(cfg));
  cfg.replicates = 0;
  EXPECT_THROW(validate(cfg), InputError);
  cfg = small_config();
  cfg.n = 2;
  EXPECT_THROW(validate(cfg), InputError);
  cfg = small_config();
  cfg.alphas = {1.0, 1.0};
  EXPECT_THROW(validate(cfg), InputError);
  cfg.alphas = {-1.0};
  EXPECT_THROW(validate(cfg), InputError);
  cfg = small_config();
  cfg.n = 4;
  cfg.k_order = 5;
  EXPECT_THROW(validate(cfg), InputError);
}

TEST(RunSimulation, DeterministicAcrossThreadCounts) {
  const SimConfig cfg = small_config();
  EXPECT_TRUE(same(run_simulation(cfg, 1), run_simulation(cfg, 3)));
  SimConfig one = cfg;
  one.replicates = 1;
  EXPECT_TRUE(same(run_simulation(one, 1), run_simulation(one, 1)));
  SimConfig other = cfg;
  other.seed = 100;
  EXPECT_FALSE(same(run_simulation(cfg, 1), run_simulation(other, 1)));
}

TEST(RunSimulation, RecordInvariants) {
  const SimConfig cfg = small_config();
  const SimResult r = run_simulation(cfg, 2);
  const double n3 = std::pow(cfg.n, 3);
  for (const auto& rec : r.replicates) {
    ASSERT_EQ(rec.scaled.size(), cfg.k_order);
    ASSERT_EQ(rec.counts.size(), cfg.alphas.size());
    EXPECT_TRUE(std::is_sorted(rec.scaled.begin(), rec.scaled.end()));
    EXPECT_TRUE(std::is_sorted(rec.counts.begin(), rec.counts.end()));
    EXPECT_GT(rec.diameter, 0.0);
    EXPECT_LE(rec.diameter, std::sqrt(2.0));
    for (std::size_t a = 0; a < cfg.alphas.size(); ++a) {
      if (rec.counts[a] > cfg.k_order) continue;
      const auto below = std::count_if(rec.scaled.begin(), rec.scaled.end(),
                                       [&](double x) { return x <= cfg.alphas[a]; });
      EXPECT_EQ(rec.counts[a], static_cast<std::uint64_t>(below));
    }
    EXPECT_LT(rec.scaled[0] / n3, 1.0);
  }
}

TEST(Summary, SquareLimitLaw) {
  const auto s = summarize(square_run(), 2.0);
  EXPECT_NEAR(s.mean_delta1.value, 0.5, 3 * s.mean_delta1.se);
  EXPECT_NEAR(s.implied_kappa, 1.0 / s.mean_delta1.value, 1e-15);
  EXPECT_LT(s.ks.d, 0.05);
  ASSERT_EQ(s.per_alpha.size(), 5u);
  EXPECT_NEAR(s.per_alpha[3].mean_count.value, 4.0, 3 * s.per_alpha[3].mean_count.se);
  EXPECT_EQ(s.per_alpha[3].limit_mean, 4.0);
  EXPECT_LT(s.per_alpha[3].tv_to_poisson, 0.06);
}

TEST(EstimatePi, SmallBetaSlope) {
  const auto p = estimate_pi(square(), 1e-4, 1000000, RngStream(3, 0));
  EXPECT_NEAR(p.pi.value, 12e-4, 3 * p.pi.se);
  EXPECT_LE(p.pi.value * p.pi.value, p.pi1.value + 3 * p.pi1.se);
  EXPECT_LE(p.pi1.value, p.pi2.value + 3 * p.pi2.se);
}

TEST(EstimatePi, CertainEvent) {
  for (auto method : {PiMethod::kConditional, PiMethod::kIndicator}) {
    const auto p = estimate_pi(square(), 1.0, 10000, RngStream(1, 0), method);
    EXPECT_NEAR(p.pi.value, 1.0, 1e-12);
    EXPECT_NEAR(p.pi1.value, 1.0, 1e-12);
    EXPECT_NEAR(p.pi2.value, 1.0, 1e-12);
  }
}

TEST(EstimatePi, EstimatorsAgree) {
  for (const Measure& m : {square(), Measure::gaussian({0, 0}, {1, 0, 1})}) {
    const auto c = estimate_pi(m, 1e-3, 1000000, RngStream(5, 0), PiMethod::kConditional);
    const auto i = estimate_pi(m, 1e-3, 1000000, RngStream(5, 1), PiMethod::kIndicator);
    auto close = [](Estimate a, Estimate b) {
      return std::abs(a.value - b.value) <= 4 * std::hypot(a.se, b.se);
    };
    EXPECT_TRUE(close(c.pi, i.pi));
    EXPECT_TRUE(close(c.pi1, i.pi1));
    EXPECT_TRUE(close(c.pi2, i.pi2));
  }
}

TEST(EstimatePi, DeterministicAcrossThreads) {
  const auto a = estimate_pi(square(), 1e-3, 40000, RngStream(6, 0), PiMethod::kConditional, 1);
  const auto b = estimate_pi(square(), 1e-3, 40000, RngStream(6, 0), PiMethod::kConditional, 4);
  EXPECT_EQ(a.pi2.value, b.pi2.value);
  EXPECT_EQ(a.pi1.se, b.pi1.se);
  EXPECT_THROW(estimate_pi(square(), 0.0, 40000, RngStream(6, 0)), InputError);
  EXPECT_THROW(estimate_pi(square(), 1e-3, 9999, RngStream(6, 0)), InputError);
}

TEST(LambdaN, ApproachesKappaAlphaFromBelow) {
  EXPECT_EQ(lambda_n(square(), 100, 0.0, 100000, RngStream(1, 0)).value, 0.0);
  double prev = 0.0;
  for (std::size_t n : {50u, 100u, 200u}) {
    const auto l = lambda_n(square(), n, 1.0, 1000000, RngStream(4, n));
    EXPECT_LE(l.value, 2.0 + 3 * l.se);
    EXPECT_GT(l.value, prev);
    prev = l.value;
  }
  EXPECT_GT(prev, 1.9);
}

TEST(LambdaN, MatchesSimulatedMeanCount) {
  const auto& run = square_run();
  RunningStats t;
  for (auto c : run.counts(2)) t.add(static_cast<double>(c));
  const auto l = lambda_n(square(), 100, 1.0, 1000000, RngStream(8, 0));
  EXPECT_NEAR(t.mean(), l.value, 3 * std::hypot(t.standard_error(), l.se));
}

TEST(ChenStein, Algebra) {
  EXPECT_EQ(chen_stein_bound(100, 1.0, {0.0, 0.0}, 2.0), 0.0);
  for (double lambda : {0.1, 1.0, 10.0, 100.0}) {
    const double f = chen_stein_bound(10, 1.0, {1e-5, 0.0}, lambda) / (1e5 * 1e-5);
    EXPECT_LE(f, 1.0 / (2 * lambda));
    EXPECT_NEAR(f, (1 - std::exp(-lambda)) / (2 * lambda), 1e-15);
  }
  EXPECT_THROW(chen_stein_bound(10, 1.0, {1e-5, 0.0}, 0.0), InputError);
}

TEST(ChenStein, DecreasesInN) {
  double prev = INFINITY;
  for (std::size_t n : {50u, 100u, 200u}) {
    const double beta = 1.0 / std::pow(n, 3);
    const auto p = estimate_pi(square(), beta, 1000000, RngStream(10, n));
    const double lambda = n * (n - 1.0) * (n - 2.0) / 6.0 * p.pi.value;
    const double b = chen_stein_bound(n, 1.0, p.pi2, lambda);
    EXPECT_GT(b, 0.0);
    EXPECT_LT(b, prev);
    prev = b;
  }
}

TEST(TailBound, SquareHasNoViolations) {
  const auto rep = tail_bound_check(square_run(), square(), 100, {0.0, 0.5, 1.0, 2.0}, 100000,
                                    RngStream(11, 0));
  ASSERT_EQ(rep.entries.size(), 4u);
  EXPECT_EQ(rep.entries[0].survival, 1.0);
  EXPECT_EQ(rep.entries[0].bound, 1.0);
  EXPECT_TRUE(rep.ok());
  // Near e^{-2} at alpha = 1, with the bound far above it.
  EXPECT_NEAR(rep.entries[2].survival, std::exp(-2.0), 0.04);
  EXPECT_GT(rep.entries[2].bound, 0.5);
  SimResult tiny = square_run();
  tiny.replicates.resize(999);
  EXPECT_THROW(tail_bound_check(tiny, square(), 100, {1.0}, 100000, RngStream(11, 0)),
               InputError);
}

TEST(Moments, Square) {
  const auto m = moment_check(square_run(), 2.0, 3);
  ASSERT_EQ(m.size(), 3u);
  EXPECT_EQ(m[0].expected, 0.5);
  EXPECT_EQ(m[1].expected, 0.5);
  EXPECT_EQ(m[2].expected, 0.75);
  EXPECT_TRUE(m[0].within);
  EXPECT_TRUE(m[1].within);
}

TEST(Spacings, PoissonStructure) {
  const auto s = spacings_check(square_run(), 2.0);
  EXPECT_GT(s.first.p_approx, 0.01);
  EXPECT_TRUE(s.uncorrelated());
  EXPECT_NEAR(s.band, 3.0 / std::sqrt(1000.0), 1e-15);
  const auto bad = spacings_check(square_run(), 4.0);
  EXPECT_LT(bad.first.p_approx, 0.01);
  SimConfig cfg = small_config();
  cfg.k_order = 2;
  EXPECT_THROW(spacings_check(run_simulation(cfg), 2.0), InputError);
}

TEST(DiskSquareOverlap, ClosedForms) {
  EXPECT_NEAR(disk_square_overlap({0.5, 0.5}, 0.1), kPi * 0.01, 1e-15);
  EXPECT_NEAR(disk_square_overlap({0.0, 0.0}, 0.2), kPi * 0.04 / 4, 1e-15);
  EXPECT_NEAR(disk_square_overlap({0.5, 0.0}, 0.2), kPi * 0.04 / 2, 1e-15);
  EXPECT_NEAR(disk_square_overlap({0.3, 0.8}, std::sqrt(2.0) + 0.01), 1.0, 1e-12);
  // Ratio P / eps^2 for eps >= sqrt(2) is 1/eps^2 <= 1/2.
  const double e = 1.5;
  EXPECT_LE(disk_square_overlap({0.1, 0.9}, e) / (e * e), 0.5);
}

TEST(DiskSquareOverlap, MatchesMonteCarlo) {
  RngStream rng(12, 0);
  for (int t = 0; t < 20; ++t) {
    const Point c{rng.uniform(), rng.uniform()};
    const double eps = 0.05 + 0.6 * rng.uniform();
    std::size_t hit = 0;
    const std::size_t n = 200000;
    for (std::size_t i = 0; i < n; ++i) {
      const Point y{rng.uniform(), rng.uniform()};
      hit += norm(y - c) <= eps;
    }
    const double p = static_cast<double>(hit) / n;
    EXPECT_NEAR(disk_square_overlap(c, eps), p, 4 * std::sqrt(p * (1 - p) / n) + 1e-12);
  }
}

TEST(Nu, EstimateNearPi) {
  const auto a = nu_estimate(100000, RngStream(1, 0));
  const auto b = nu_estimate(100000, RngStream(2, 0));
  EXPECT_GE(a.value, 3.0);
  EXPECT_LE(a.value, 3.3);
  EXPECT_NEAR(a.value, b.value, 0.05 * a.value);
  ASSERT_EQ(a.eps.size(), 10u);
  EXPECT_EQ(a.eps.front(), 0.5);
  EXPECT_EQ(a.eps.back(), std::ldexp(1.0, -10));
  EXPECT_THROW(nu_estimate(99999, RngStream(1, 0)), InputError);
}
