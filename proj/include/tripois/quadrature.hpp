#pragma once

#include <array>
#include <functional>
#include <span>

namespace tripois::quad {

inline constexpr int kNodes = 32;

struct Rule {
  std::array<double, kNodes> nodes;    // on [-1, 1], ascending
  std::array<double, kNodes> weights;
};

// 32-point Gauss-Legendre rule, computed once.
const Rule& gauss_legendre();

// Fixed 32-point rule on [a, b].
double gauss_legendre(const std::function<double(double)>& f, double a, double b);

struct Options {
  double rel_tol = 1e-10;
  double abs_floor = 1e-14;
  int max_panels = 20000;
  // Use r = end + h*s^2 on the outermost segments, which removes the
  // square-root behaviour of integrands that vanish like (r - end)^q.
  bool substitute_ends = false;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  int panels = 0;
};

// Composite adaptive Gauss-Legendre over the consecutive segments of the
// sorted breakpoint list. A panel is accepted once it agrees with the sum of
// its two halves to within its share of the tolerance; otherwise both halves
// are refined. Throws NonConvergence when the panel budget is exhausted.
Result integrate(const std::function<double(double)>& f,
                 std::span<const double> breakpoints, const Options& options);

Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& options);

}  // namespace tripois::quad
