#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "tripois/error.hpp"
#include "tripois/rng.hpp"
#include "tripois/svg.hpp"

using namespace tripois;

namespace {
std::vector<double> exp_draws(double rate, int n) {
  RngStream rng(4, 0);
  std::vector<double> xs;
  for (int i = 0; i < n; ++i) xs.push_back(-std::log(rng.uniform_open()) / rate);
  return xs;
}
}  // namespace

TEST(Svg, OverlayIsExponentialDensity) {
  const auto curve = svg::exp_density_curve(2.0, 3.0, 31);
  ASSERT_EQ(curve.size(), 31u);
  for (Point p : curve) EXPECT_NEAR(p.y, 2.0 * std::exp(-2.0 * p.x), 1e-15);
  EXPECT_EQ(curve.back().x, 3.0);
  const std::string s = svg::histogram(exp_draws(2.0, 2000), 2.0);
  EXPECT_EQ(s.rfind("<svg", 0), 0u);
  EXPECT_NE(s.find("class=\"overlay\""), std::string::npos);
  EXPECT_NE(s.find("class=\"bar\""), std::string::npos);
  EXPECT_NE(s.find("</svg>"), std::string::npos);
}

TEST(Svg, QqAndCounts) {
  const std::string q = svg::qq(exp_draws(1.0, 500), 1.0);
  EXPECT_NE(q.find("class=\"diagonal\""), std::string::npos);
  EXPECT_NE(q.find("class=\"band\""), std::string::npos);
  const std::string c = svg::counts({0, 1, 1, 2, 5}, 1.5);
  EXPECT_NE(c.find("class=\"poisson\""), std::string::npos);
  EXPECT_NE(c.find("class=\"empirical\""), std::string::npos);
  EXPECT_THROW(svg::histogram({}, 1.0), InputError);
  EXPECT_THROW(svg::counts({}, 1.0), InputError);
}

// Exponential data stays inside the plotted 95% band.
TEST(Svg, QqSelfTestWithinBand) {
  auto xs = exp_draws(1.0, 2000);
  std::sort(xs.begin(), xs.end());
  const double m = static_cast<double>(xs.size()), band = 1.358 / std::sqrt(m);
  auto q = [](double p) { return -std::log1p(-p); };
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double p = (i + 0.5) / m;
    if (p - band > 0.0) EXPECT_GE(xs[i], q(p - band));
    if (p + band < 1.0) EXPECT_LE(xs[i], q(p + band));
  }
}
