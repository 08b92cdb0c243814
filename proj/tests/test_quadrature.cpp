#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "tripois/error.hpp"
#include "tripois/quadrature.hpp"

using namespace tripois;

TEST(GaussLegendre, ExactForPolynomials) {
  const auto& rule = quad::gauss_legendre();
  double wsum = 0.0;
  for (double w : rule.weights) wsum += w;
  EXPECT_NEAR(wsum, 2.0, 1e-14);
  // Degree 63 is integrated exactly.
  EXPECT_NEAR(quad::gauss_legendre([](double x) { return std::pow(x, 62); }, -1, 1), 2.0 / 63,
              1e-14);
}

TEST(Integrate, SmoothAndKinked) {
  quad::Options o;
  auto r = quad::integrate([](double x) { return std::exp(-x * x); }, -8, 8, o);
  EXPECT_NEAR(r.value, std::sqrt(std::numbers::pi), 1e-12);
  const double bp[] = {-1.0, 0.3, 1.0};
  r = quad::integrate([](double x) { return std::abs(x - 0.3); }, bp, o);
  EXPECT_NEAR(r.value, 0.5 * (1.3 * 1.3 + 0.7 * 0.7), 1e-13);
}

TEST(Integrate, SquareRootEndpoints) {
  quad::Options o;
  o.substitute_ends = true;
  const auto r = quad::integrate([](double x) { return std::sqrt(x * (1 - x)); }, 0, 1, o);
  EXPECT_NEAR(r.value, std::numbers::pi / 8, 1e-11);
}

TEST(Integrate, BudgetExhaustionThrows) {
  quad::Options o;
  o.max_panels = 3;
  o.rel_tol = 1e-15;
  try {
    quad::integrate([](double x) { return std::sin(200 * x) / (x + 1e-3); }, 0, 1, o);
    FAIL() << "expected NonConvergence";
  } catch (const NonConvergence& e) {
    EXPECT_TRUE(std::isfinite(e.best_estimate()));
    EXPECT_GT(e.achieved_error(), 0.0);
  }
}
