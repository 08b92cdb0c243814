#include "tripois/catalog.hpp"

#include <cmath>
#include <numbers>

namespace tripois::catalog {

Region unit_square() { return Region::rectangle({0.0, 0.0}, 1.0, 1.0); }

Region regular_hexagon() {
  std::vector<Point> v;
  for (int i = 0; i < 6; ++i) {
    const double t = i * std::numbers::pi / 3.0;
    v.push_back({std::cos(t), std::sin(t)});
  }
  return Region::convex_polygon(std::move(v));
}

Region l_shape() {
  return Region::simple_polygon(
      {{0.0, 0.0}, {1.0, 0.0}, {1.0, 0.5}, {0.5, 0.5}, {0.5, 1.0}, {0.0, 1.0}});
}

Region star() {
  std::vector<Point> v;
  for (int i = 0; i < 10; ++i) {
    const double t = std::numbers::pi / 2.0 + i * std::numbers::pi / 5.0;
    const double r = i % 2 == 0 ? 1.0 : 0.3;
    v.push_back({r * std::cos(t), r * std::sin(t)});
  }
  return Region::simple_polygon(std::move(v));
}

Measure gaussian_mixture(double a) {
  return Measure::mixture(
      {0.5, 0.5}, {Measure::gaussian({0.0, 0.0}, {1.0, 0.0, 1.0}),
                   Measure::gaussian({0.0, 0.0}, {a * a, 0.0, a * a})});
}

std::vector<NamedRegion> regions() {
  return {{"unit square", unit_square()},
          {"2x3 rectangle", Region::rectangle({0.0, 0.0}, 2.0, 3.0)},
          {"regular hexagon", regular_hexagon()},
          {"unit disk", Region::disk({0.0, 0.0}, 1.0)},
          {"L-shape", l_shape()},
          {"star", star()}};
}

std::vector<NamedMeasure> measures() {
  std::vector<NamedMeasure> out;
  for (auto& r : regions()) out.push_back({"uniform " + r.name, Measure::uniform(r.region)});
  out.push_back({"gaussian identity", Measure::gaussian({0.0, 0.0}, {1.0, 0.0, 1.0})});
  out.push_back({"gaussian diag(4,1)", Measure::gaussian({0.0, 0.0}, {4.0, 0.0, 1.0})});
  out.push_back({"gaussian correlated", Measure::gaussian({1.0, -2.0}, {2.0, 0.6, 1.0})});
  out.push_back({"gaussian mixture a=3", gaussian_mixture(3.0)});
  out.push_back({"affine square",
                 Measure::affine({2.0, 1.0, 0.0, 1.0}, {1.0, -1.0},
                                 Measure::uniform(unit_square()))});
  return out;
}

}  // namespace tripois::catalog
