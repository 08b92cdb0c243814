#pragma once

#include <memory>
#include <vector>

#include "tripois/geometry.hpp"
#include "tripois/rng.hpp"

namespace tripois {

struct CovMatrix {
  double v11 = 0.0;
  double v12 = 0.0;
  double v22 = 0.0;

  double determinant() const { return v11 * v22 - v12 * v12; }
  // Variance of x . u.
  double quadratic(Point u) const {
    return v11 * u.x * u.x + 2.0 * v12 * u.x * u.y + v22 * u.y * u.y;
  }
  double min_eigenvalue() const;
};

struct Matrix2 {
  double a11 = 1.0, a12 = 0.0;
  double a21 = 0.0, a22 = 1.0;

  double determinant() const { return a11 * a22 - a12 * a21; }
  Point apply(Point p) const { return {a11 * p.x + a12 * p.y, a21 * p.x + a22 * p.y}; }
  Point apply_transpose(Point p) const {
    return {a11 * p.x + a21 * p.y, a12 * p.x + a22 * p.y};
  }
  Matrix2 inverse() const;
  double min_singular_value() const;
};

struct MeasureNode;

// A planar probability law with a bounded density. Cheap to copy; the
// underlying description is shared and immutable.
class Measure {
 public:
  enum class Kind { kUniform, kGaussian, kMixture, kAffine };

  static Measure uniform(Region region);
  static Measure gaussian(Point mean, CovMatrix cov);
  static Measure mixture(std::vector<double> weights,
                         std::vector<Measure> components);
  static Measure affine(Matrix2 a, Point b, Measure base);

  Kind kind() const;
  const MeasureNode& node() const { return *node_; }

 private:
  explicit Measure(std::shared_ptr<const MeasureNode> node)
      : node_(std::move(node)) {}
  std::shared_ptr<const MeasureNode> node_;
};

struct UniformMeasure {
  Region region;
};

struct GaussianMeasure {
  Point mean;
  CovMatrix cov;
  // Lower Cholesky factor of cov.
  double l11 = 1.0, l21 = 0.0, l22 = 1.0;
};

struct MixtureMeasure {
  std::vector<double> weights;
  std::vector<Measure> components;
};

struct AffineMeasure {
  Matrix2 a;
  Point b;
  Measure base;
};

struct MeasureNode {
  std::variant<UniformMeasure, GaussianMeasure, MixtureMeasure, AffineMeasure> v;
};

double density(const Measure& m, Point p);
// Density of X . (cos theta, sin theta) at r.
double marginal(const Measure& m, const LineRT& l);
double marginal(const Measure& m, double r, double theta);
// P(X . (cos theta, sin theta) <= r).
double marginal_cdf(const Measure& m, double r, double theta);

// Throws std::runtime_error after 10^6 consecutive rejections.
Point sample(const Measure& m, RngStream& rng);

Point mean(const Measure& m);
CovMatrix covariance(const Measure& m);

// Upper bounds on the density (M) and on every line marginal (N).
double density_bound(const Measure& m);
double marginal_bound(const Measure& m);

// Sorted r values that bracket the support of r -> marginal(m, r, theta) and
// mark its kinks or scale changes. First and last entries are the ends of the
// integration range (Gaussian tails are cut at 8 standard deviations).
std::vector<double> support_breakpoints(const Measure& m, double theta);
// Sorted theta values in [0, pi) where theta -> marginal(m, ., theta) may
// lose smoothness.
std::vector<double> kink_angles(const Measure& m);
// Box covering the support (Gaussians truncated at 8 standard deviations).
std::pair<Point, Point> covering_box(const Measure& m);

// True if every point draw of m lies in a bounded set.
bool has_bounded_support(const Measure& m);

}  // namespace tripois
