#pragma once

#include <string>
#include <vector>

#include "tripois/geometry.hpp"
#include "tripois/measures.hpp"

namespace tripois::catalog {

struct NamedRegion {
  std::string name;
  Region region;
};

struct NamedMeasure {
  std::string name;
  Measure measure;
};

Region unit_square();
Region regular_hexagon();  // circumradius 1, centred at the origin
Region l_shape();          // [0,1]^2 minus [0.5,1]^2
Region star();             // five points, radii 1 and 0.3

// ½ N(0, I) + ½ N(0, a^2 I).
Measure gaussian_mixture(double a);

// Unit square, 2x3 rectangle, hexagon, unit disk, L-shape, star.
std::vector<NamedRegion> regions();
// Uniform laws on regions() followed by Gaussians, a mixture and an affine image.
std::vector<NamedMeasure> measures();

}  // namespace tripois::catalog
