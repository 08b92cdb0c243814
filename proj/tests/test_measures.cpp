#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tripois/catalog.hpp"
#include "tripois/error.hpp"
#include "tripois/measures.hpp"
#include "tripois/quadrature.hpp"
#include "tripois/statistics.hpp"

using namespace tripois;
constexpr double kPi = std::numbers::pi;

namespace {
Measure std_gaussian() { return Measure::gaussian({0, 0}, {1, 0, 1}); }
Measure square() { return Measure::uniform(catalog::unit_square()); }
}  // namespace

TEST(Density, Examples) {
  EXPECT_DOUBLE_EQ(density(square(), {0.5, 0.5}), 1.0);
  EXPECT_DOUBLE_EQ(density(square(), {2, 2}), 0.0);
  EXPECT_NEAR(density(std_gaussian(), {0, 0}), 1 / (2 * kPi), 1e-15);
  // Affine image divides by |det A|.
  const Measure img = Measure::affine({2, 0, 0, 2}, {0, 0}, std_gaussian());
  EXPECT_NEAR(density(img, {0, 0}), 1 / (8 * kPi), 1e-15);
}

TEST(Marginal, Examples) {
  for (double th : {0.0, 0.4, 1.9}) {
    EXPECT_NEAR(marginal(std_gaussian(), 0.0, th), 1 / std::sqrt(2 * kPi), 1e-15);
  }
  EXPECT_NEAR(marginal(square(), 0.5, 0.0), 1.0, 1e-15);
  const Measure img = Measure::affine({2, 0, 0, 2}, {0, 0}, std_gaussian());
  EXPECT_NEAR(marginal(img, 0.0, 0.0), 1 / (2 * std::sqrt(2 * kPi)), 1e-15);
}

TEST(Marginal, SameLineTwoWays) {
  for (const auto& m : catalog::measures()) {
    for (double th : {0.1, 0.9, 2.0, 3.0}) {
      for (double r : {-0.3, 0.2, 0.6}) {
        const double a = marginal(m.measure, r, th);
        const double b = marginal(m.measure, LineRT(-r, th + kPi));
        EXPECT_NEAR(a, b, 1e-12) << m.name;
      }
    }
  }
}

TEST(Marginal, IntegratesToOne) {
  for (const auto& m : catalog::measures()) {
    for (int i = 0; i < 16; ++i) {
      const double th = kPi * i / 16.0;
      const auto bp = support_breakpoints(m.measure, th);
      const auto res = quad::integrate(
          [&](double r) { return marginal(m.measure, r, th); }, bp, {});
      EXPECT_NEAR(res.value, 1.0, 1e-6) << m.name << " theta " << th;
    }
  }
}

TEST(Density, IntegratesToOne) {
  quad::Options o;
  o.rel_tol = 1e-7;
  for (const auto& m : catalog::measures()) {
    const auto [lo, hi] = covering_box(m.measure);
    // Inner integral along x for fixed y; breakpoints from the vertical projection.
    const auto xs = support_breakpoints(m.measure, 0.0);
    const auto ys = support_breakpoints(m.measure, kPi / 2);
    auto row = [&](double y) {
      return quad::integrate([&](double x) { return density(m.measure, {x, y}); }, xs, o).value;
    };
    const double total = quad::integrate(row, ys, o).value;
    EXPECT_NEAR(total, 1.0, 1e-4) << m.name << " box " << lo.x << "," << hi.x;
  }
}

TEST(Marginal, MatchesSampler) {
  for (const auto& m : catalog::measures()) {
    RngStream rng(21, 0);
    std::vector<Point> pts;
    for (int i = 0; i < 100000; ++i) pts.push_back(sample(m.measure, rng));
    for (double th : {0.0, 0.5, 1.3, 2.6}) {
      const Point u{std::cos(th), std::sin(th)};
      std::vector<double> proj;
      for (Point p : pts) proj.push_back(dot(p, u));
      std::sort(proj.begin(), proj.end());
      double d = 0.0;
      const double n = static_cast<double>(proj.size());
      for (std::size_t i = 0; i < proj.size(); i += 97) {
        const double f = marginal_cdf(m.measure, proj[i], th);
        d = std::max({d, std::abs(f - i / n), std::abs(f - (i + 1) / n)});
      }
      EXPECT_LT(d, 0.01) << m.name << " theta " << th;
    }
  }
}

TEST(MarginalCdf, MatchesIntegratedMarginal) {
  for (const auto& m : catalog::measures()) {
    const double th = 0.7;
    const auto bp = support_breakpoints(m.measure, th);
    const double r = 0.5 * (bp.front() + bp.back()) + 0.1;
    std::vector<double> cut;
    for (double b : bp) if (b < r) cut.push_back(b);
    cut.push_back(r);
    const double integ = quad::integrate([&](double x) { return marginal(m.measure, x, th); },
                                         cut, {}).value;
    EXPECT_NEAR(marginal_cdf(m.measure, r, th), integ, 1e-8) << m.name;
  }
}

TEST(Sample, SupportAndReproducibility) {
  RngStream a(3, 1), b(3, 1);
  for (int i = 0; i < 10000; ++i) {
    const Point p = sample(square(), a);
    EXPECT_TRUE(p.x >= 0 && p.x <= 1 && p.y >= 0 && p.y <= 1);
    EXPECT_EQ(p, sample(square(), b));
  }
  RngStream l(4, 0);
  const Region ls = catalog::l_shape();
  for (int i = 0; i < 10000; ++i) EXPECT_TRUE(ls.contains(sample(Measure::uniform(ls), l)));
}

TEST(Sample, GaussianMean) {
  RngStream rng(1, 0);
  RunningStats x, y;
  for (int i = 0; i < 1000000; ++i) {
    const Point p = sample(std_gaussian(), rng);
    x.add(p.x);
    y.add(p.y);
  }
  EXPECT_NEAR(x.mean(), 0.0, 0.01);
  EXPECT_NEAR(y.mean(), 0.0, 0.01);
}

TEST(Covariance, Examples) {
  const CovMatrix s = covariance(square());
  EXPECT_NEAR(s.v11, 1.0 / 12, 1e-15);
  EXPECT_NEAR(s.v12, 0.0, 1e-15);
  EXPECT_NEAR(s.v22, 1.0 / 12, 1e-15);
  const CovMatrix g = covariance(Measure::gaussian({1, 2}, {2, 0.5, 3}));
  EXPECT_EQ(g.v11, 2.0);
  EXPECT_EQ(g.v12, 0.5);
  EXPECT_EQ(g.v22, 3.0);
  const CovMatrix d = covariance(Measure::uniform(Region::disk({3, 3}, 2)));
  EXPECT_NEAR(d.v11, 1.0, 1e-14);
  EXPECT_NEAR(d.v22, 1.0, 1e-14);
}

TEST(Covariance, MatchesSamplesForEveryCatalogMeasure) {
  for (const auto& m : catalog::measures()) {
    RngStream rng(8, 0);
    const CovMatrix c = covariance(m.measure);
    const Point mu = mean(m.measure);
    RunningStats sx, sy, sxx, sxy, syy;
    for (int i = 0; i < 1000000; ++i) {
      const Point p = sample(m.measure, rng);
      sx.add(p.x);
      sy.add(p.y);
      sxx.add((p.x - mu.x) * (p.x - mu.x));
      sxy.add((p.x - mu.x) * (p.y - mu.y));
      syy.add((p.y - mu.y) * (p.y - mu.y));
    }
    EXPECT_NEAR(sx.mean(), mu.x, 4 * sx.standard_error()) << m.name;
    EXPECT_NEAR(sy.mean(), mu.y, 4 * sy.standard_error()) << m.name;
    EXPECT_NEAR(sxx.mean(), c.v11, 4 * sxx.standard_error()) << m.name;
    EXPECT_NEAR(sxy.mean(), c.v12, 4 * sxy.standard_error()) << m.name;
    EXPECT_NEAR(syy.mean(), c.v22, 4 * syy.standard_error()) << m.name;
  }
}

TEST(Bounds, Examples) {
  EXPECT_DOUBLE_EQ(density_bound(square()), 1.0);
  EXPECT_NEAR(marginal_bound(square()), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(density_bound(std_gaussian()), 1 / (2 * kPi), 1e-15);
  EXPECT_NEAR(marginal_bound(std_gaussian()), 1 / std::sqrt(2 * kPi), 1e-15);
  const Measure mix = Measure::mixture(
      {0.5, 0.5}, {std_gaussian(), Measure::gaussian({0, 0}, {4, 0, 4})});
  EXPECT_LE(density_bound(mix), 0.5 / (2 * kPi) + 0.5 / (8 * kPi) + 1e-15);
}

TEST(Bounds, HonoredOnRandomProbe) {
  for (const auto& m : catalog::measures()) {
    const double mb = density_bound(m.measure), nb = marginal_bound(m.measure);
    const auto [lo, hi] = covering_box(m.measure);
    RngStream rng(17, 0);
    for (int i = 0; i < 100000; ++i) {
      const Point p{lo.x + (hi.x - lo.x) * rng.uniform(), lo.y + (hi.y - lo.y) * rng.uniform()};
      ASSERT_LE(density(m.measure, p), mb * (1 + 1e-12)) << m.name;
      const double th = kPi * rng.uniform();
      const double r = dot(p, {std::cos(th), std::sin(th)});
      ASSERT_LE(marginal(m.measure, r, th), nb * (1 + 1e-12)) << m.name;
    }
  }
}

TEST(Measure, Validation) {
  EXPECT_THROW(Measure::gaussian({0, 0}, {1, 2, 1}), InputError);
  EXPECT_THROW(Measure::mixture({0.5, 0.4}, {std_gaussian(), std_gaussian()}), InputError);
  EXPECT_THROW(Measure::mixture({1.5, -0.5}, {std_gaussian(), std_gaussian()}), InputError);
  EXPECT_THROW(Measure::affine({1, 2, 2, 4}, {0, 0}, std_gaussian()), InputError);
}
