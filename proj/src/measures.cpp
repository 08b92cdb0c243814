#include "tripois/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "tripois/error.hpp"

namespace tripois {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGaussianCut = 8.0;
constexpr int kMaxRejections = 1000000;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Point unit(double theta) { return {std::cos(theta), std::sin(theta)}; }

double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * kPi);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

// Area of the polygon on the side x . u <= r (Sutherland-Hodgman against one
// half-plane; valid for simple polygons since only the signed area is used).
double clipped_polygon_area(const std::vector<Point>& v, Point u, double r) {
  std::vector<Point> out;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point p = v[i];
    const Point q = v[(i + 1) % n];
    const double sp = dot(p, u) - r;
    const double sq = dot(q, u) - r;
    if (sp <= 0.0) out.push_back(p);
    if ((sp < 0.0 && sq > 0.0) || (sp > 0.0 && sq < 0.0)) {
      const double t = sp / (sp - sq);
      out.push_back(p + t * (q - p));
    }
  }
  double twice = 0.0;
  for (std::size_t i = 0, m = out.size(); i < m; ++i) {
    twice += cross(out[i], out[(i + 1) % m]);
  }
  return 0.5 * twice;
}

// Direction data for the marginal of an affine image along theta.
struct AffineDirection {
  double shift;  // b . u
  double scale;  // |A^T u|
  double phi;    // direction of A^T u folded into [0, pi)
  bool flipped;
};

AffineDirection affine_direction(const AffineMeasure& a, double theta) {
  const Point u = unit(theta);
  const Point w = a.a.apply_transpose(u);
  auto [phi, flipped] = fold_angle(std::atan2(w.y, w.x));
  return {dot(a.b, u), norm(w), phi, flipped};
}

const MeasureNode& node(const Measure& m) { return m.node(); }

}  // namespace

double CovMatrix::min_eigenvalue() const {
  const double half_trace = 0.5 * (v11 + v22);
  const double disc = std::hypot(0.5 * (v11 - v22), v12);
  return half_trace - disc;
}

Matrix2 Matrix2::inverse() const {
  const double d = determinant();
  return {a22 / d, -a12 / d, -a21 / d, a11 / d};
}

double Matrix2::min_singular_value() const {
  // Singular values of A are the square roots of the eigenvalues of A^T A.
  const CovMatrix ata{a11 * a11 + a21 * a21, a11 * a12 + a21 * a22,
                      a12 * a12 + a22 * a22};
  return std::sqrt(std::max(0.0, ata.min_eigenvalue()));
}

Measure Measure::uniform(Region region) {
  return Measure(std::make_shared<const MeasureNode>(
      MeasureNode{UniformMeasure{std::move(region)}}));
}

Measure Measure::gaussian(Point mean, CovMatrix cov) {
  if (!std::isfinite(mean.x) || !std::isfinite(mean.y)) {
    throw InputError("gaussian mean must be finite");
  }
  if (!(cov.v11 > 0.0) || !(cov.determinant() > 0.0) ||
      !std::isfinite(cov.determinant())) {
    throw InputError("gaussian covariance must be positive definite");
  }
  GaussianMeasure g{mean, cov};
  g.l11 = std::sqrt(cov.v11);
  g.l21 = cov.v12 / g.l11;
  g.l22 = std::sqrt(cov.v22 - g.l21 * g.l21);
  return Measure(std::make_shared<const MeasureNode>(MeasureNode{g}));
}

Measure Measure::mixture(std::vector<double> weights,
                         std::vector<Measure> components) {
  if (weights.empty() || weights.size() != components.size()) {
    throw InputError("mixture needs one weight per component");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw InputError("mixture weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw InputError("mixture weights must sum to 1");
  }
  return Measure(std::make_shared<const MeasureNode>(
      MeasureNode{MixtureMeasure{std::move(weights), std::move(components)}}));
}

Measure Measure::affine(Matrix2 a, Point b, Measure base) {
  if (!(std::abs(a.determinant()) > 1e-12)) {
    throw InputError("affine matrix is singular");
  }
  return Measure(std::make_shared<const MeasureNode>(
      MeasureNode{AffineMeasure{a, b, std::move(base)}}));
}

Measure::Kind Measure::kind() const {
  return static_cast<Kind>(node_->v.index());
}

double density(const Measure& m, Point p) {
  return std::visit(
      Overloaded{
          [&](const UniformMeasure& u) {
            return u.region.contains(p) ? 1.0 / u.region.area() : 0.0;
          },
          [&](const GaussianMeasure& g) {
            const Point d = p - g.mean;
            const double det = g.cov.determinant();
            const double q =
                (g.cov.v22 * d.x * d.x - 2.0 * g.cov.v12 * d.x * d.y +
                 g.cov.v11 * d.y * d.y) /
                det;
            return std::exp(-0.5 * q) / (2.0 * kPi * std::sqrt(det));
          },
          [&](const MixtureMeasure& mix) {
            double sum = 0.0;
            for (std::size_t i = 0; i < mix.weights.size(); ++i) {
              sum += mix.weights[i] * density(mix.components[i], p);
            }
            return sum;
          },
          [&](const AffineMeasure& a) {
            const Point x = a.a.inverse().apply(p - a.b);
            return density(a.base, x) / std::abs(a.a.determinant());
          }},
      node(m).v);
}

double marginal(const Measure& m, const LineRT& l) {
  return marginal(m, l.r(), l.theta());
}

double marginal(const Measure& m, double r, double theta) {
  return std::visit(
      Overloaded{
          [&](const UniformMeasure& u) {
            return chord_length(u.region, LineRT(r, theta)) / u.region.area();
          },
          [&](const GaussianMeasure& g) {
            const Point dir = unit(theta);
            const double sd = std::sqrt(g.cov.quadratic(dir));
            return normal_pdf((r - dot(g.mean, dir)) / sd) / sd;
          },
          [&](const MixtureMeasure& mix) {
            double sum = 0.0;
            for (std::size_t i = 0; i < mix.weights.size(); ++i) {
              sum += mix.weights[i] * marginal(mix.components[i], r, theta);
            }
            return sum;
          },
          [&](const AffineMeasure& a) {
            const AffineDirection d = affine_direction(a, theta);
            double t = (r - d.shift) / d.scale;
            if (d.flipped) t = -t;
            return marginal(a.base, t, d.phi) / d.scale;
          }},
      node(m).v);
}

double marginal_cdf(const Measure& m, double r, double theta) {
  return std::visit(
      Overloaded{
          [&](const UniformMeasure& u) -> double {
            const Point dir = unit(theta);
            const Interval range = u.region.projection_range(theta);
            if (r <= range.lo) return 0.0;
            if (r >= range.hi) return 1.0;
            if (const auto* c = std::get_if<Disk>(&u.region.shape())) {
              const double d = r - dot(c->center, dir);
              const double rad = c->radius;
              const double seg = rad * rad * std::acos(-d / rad) +
                                 d * std::sqrt(rad * rad - d * d);
              return seg / u.region.area();
            }
            return clipped_polygon_area(u.region.vertices(), dir, r) /
                   u.region.area();
          },
          [&](const GaussianMeasure& g) {
            const Point dir = unit(theta);
            const double sd = std::sqrt(g.cov.quadratic(dir));
            return normal_cdf((r - dot(g.mean, dir)) / sd);
          },
          [&](const MixtureMeasure& mix) {
            double sum = 0.0;
            for (std::size_t i = 0; i < mix.weights.size(); ++i) {
              sum += mix.weights[i] * marginal_cdf(mix.components[i], r, theta);
            }
            return sum;
          },
          [&](const AffineMeasure& a) {
            const AffineDirection d = affine_direction(a, theta);
            const double t = (r - d.shift) / d.scale;
            if (d.flipped) return 1.0 - marginal_cdf(a.base, -t, d.phi);
            return marginal_cdf(a.base, t, d.phi);
          }},
      node(m).v);
}

Point sample(const Measure& m, RngStream& rng) {
  return std::visit(
      Overloaded{
          [&](const UniformMeasure& u) {
            const auto [lo, hi] = u.region.bounding_box();
            for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
              const Point p{lo.x + (hi.x - lo.x) * rng.uniform(),
                            lo.y + (hi.y - lo.y) * rng.uniform()};
              if (u.region.contains(p)) return p;
            }
            throw std::runtime_error(
                "rejection sampling failed: degenerate region");
          },
          [&](const GaussianMeasure& g) {
            const double z1 = rng.normal();
            const double z2 = rng.normal();
            return Point{g.mean.x + g.l11 * z1,
                         g.mean.y + g.l21 * z1 + g.l22 * z2};
          },
          [&](const MixtureMeasure& mix) {
            const double u = rng.uniform();
            double acc = 0.0;
            std::size_t pick = mix.weights.size() - 1;
            for (std::size_t i = 0; i < mix.weights.size(); ++i) {
              acc += mix.weights[i];
              if (u < acc) {
                pick = i;
                break;
              }
            }
            return sample(mix.components[pick], rng);
          },
          [&](const AffineMeasure& a) {
            return a.a.apply(sample(a.base, rng)) + a.b;
          }},
      node(m).v);
}

Point mean(const Measure& m) {
  return std::visit(
      Overloaded{
          [](const UniformMeasure& u) { return region_moments(u.region).centroid; },
          [](const GaussianMeasure& g) { return g.mean; },
          [](const MixtureMeasure& mix) {
            Point acc;
            for (std::size_t i = 0; i < mix.weights.size(); ++i) {
              acc = acc + mix.weights[i] * mean(mix.components[i]);
            }
            return acc;
          },
          [](const AffineMeasure& a) { return a.a.apply(mean(a.base)) + a.b; }},
      node(m).v);
}

CovMatrix covariance(const Measure& m) {
  return std::visit(
      Overloaded{
          [](const UniformMeasure& u) {
            const RegionMoments mo = region_moments(u.region);
            return CovMatrix{mo.vxx, mo.vxy, mo.vyy};
          },
          [](const GaussianMeasure& g) { return g.cov; },
          [&](const MixtureMeasure& mix) {
            // Law of total variance.
            const Point mu = mean(m);
            CovMatrix v;
            for (std::size_t i = 0; i < mix.weights.size(); ++i) {
              const CovMatrix c = covariance(mix.components[i]);
              const Point d = mean(mix.components[i]) - mu;
              const double w = mix.weights[i];
              v.v11 += w * (c.v11 + d.x * d.x);
              v.v12 += w * (c.v12 + d.x * d.y);
              v.v22 += w * (c.v22 + d.y * d.y);
            }
            return v;
          },
          [](const AffineMeasure& a) {
            const CovMatrix c = covariance(a.base);
            const Matrix2& t = a.a;
            // A V A^T
            const double b11 = t.a11 * c.v11 + t.a12 * c.v12;
            const double b12 = t.a11 * c.v12 + t.a12 * c.v22;
            const double b21 = t.a21 * c.v11 + t.a22 * c.v12;
            const double b22 = t.a21 * c.v12 + t.a22 * c.v22;
            return CovMatrix{b11 * t.a11 + b12 * t.a12,
                             b11 * t.a21 + b12 * t.a22,
                             b21 * t.a21 + b22 * t.a22};
          }},
      node(m).v);
}

double density_bound(const Measure& m) {
  return std::visit(
      Overloaded{
          [](const UniformMeasure& u) { return 1.0 / u.region.area(); },
          [](const GaussianMeasure& g) {
            return 1.0 / (2.0 * kPi * std::sqrt(g.cov.determinant()));
          },
          [](const MixtureMeasure& mix) {
            double sum = 0.0;
            for (std::size_t i = 0; i < mix.weights.size(); ++i) {
              sum += mix.weights[i] * density_bound(mix.components[i]);
            }
            return sum;
          },
          [](const AffineMeasure& a) {
            return density_bound(a.base) / std::abs(a.a.determinant());
          }},
      node(m).v);
}

double marginal_bound(const Measure& m) {
  return std::visit(
      Overloaded{
          [](const UniformMeasure& u) {
            // No chord is longer than the diameter.
            return u.region.diameter() / u.region.area();
          },
          [](const GaussianMeasure& g) {
            return 1.0 / std::sqrt(2.0 * kPi * g.cov.min_eigenvalue());
          },
          [](const MixtureMeasure& mix) {
            double sum = 0.0;
            for (std::size_t i = 0; i < mix.weights.size(); ++i) {
              sum += mix.weights[i] * marginal_bound(mix.components[i]);
            }
            return sum;
          },
          [](const AffineMeasure& a) {
            return marginal_bound(a.base) / a.a.min_singular_value();
          }},
      node(m).v);
}

std::vector<double> support_breakpoints(const Measure& m, double theta) {
  std::vector<double> out = std::visit(
      Overloaded{
          [&](const UniformMeasure& u) {
            return projection_breakpoints(u.region, theta);
          },
          [&](const GaussianMeasure& g) {
            const Point dir = unit(theta);
            const double c = dot(g.mean, dir);
            const double sd = std::sqrt(g.cov.quadratic(dir));
            std::vector<double> b;
            for (double k : {-kGaussianCut, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0,
                             kGaussianCut}) {
              b.push_back(c + k * sd);
            }
            return b;
          },
          [&](const MixtureMeasure& mix) {
            std::vector<double> b;
            for (const Measure& c : mix.components) {
              auto part = support_breakpoints(c, theta);
              b.insert(b.end(), part.begin(), part.end());
            }
            return b;
          },
          [&](const AffineMeasure& a) {
            const AffineDirection d = affine_direction(a, theta);
            std::vector<double> b = support_breakpoints(a.base, d.phi);
            for (double& x : b) x = d.shift + d.scale * (d.flipped ? -x : x);
            return b;
          }},
      node(m).v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<double> kink_angles(const Measure& m) {
  std::vector<double> out = std::visit(
      Overloaded{
          [](const UniformMeasure& u) { return kink_angles(u.region); },
          [](const GaussianMeasure&) { return std::vector<double>{}; },
          [](const MixtureMeasure& mix) {
            std::vector<double> b;
            for (const Measure& c : mix.components) {
              auto part = kink_angles(c);
              b.insert(b.end(), part.begin(), part.end());
            }
            return b;
          },
          [](const AffineMeasure& a) {
            // theta maps to the direction of A^T u, so base angle phi comes
            // from u proportional to A^{-T} u_phi.
            const Matrix2 inv = a.a.inverse();
            std::vector<double> b;
            for (double phi : kink_angles(a.base)) {
              const Point w = inv.apply_transpose(unit(phi));
              b.push_back(fold_angle(std::atan2(w.y, w.x)).first);
            }
            return b;
          }},
      node(m).v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double a, double b) { return b - a < 1e-14; }),
            out.end());
  return out;
}

std::pair<Point, Point> covering_box(const Measure& m) {
  return std::visit(
      Overloaded{
          [](const UniformMeasure& u) { return u.region.bounding_box(); },
          [](const GaussianMeasure& g) {
            const Point half{kGaussianCut * std::sqrt(g.cov.v11),
                             kGaussianCut * std::sqrt(g.cov.v22)};
            return std::pair{g.mean - half, g.mean + half};
          },
          [](const MixtureMeasure& mix) {
            Point lo{HUGE_VAL, HUGE_VAL}, hi{-HUGE_VAL, -HUGE_VAL};
            for (const Measure& c : mix.components) {
              const auto [a, b] = covering_box(c);
              lo = {std::min(lo.x, a.x), std::min(lo.y, a.y)};
              hi = {std::max(hi.x, b.x), std::max(hi.y, b.y)};
            }
            return std::pair{lo, hi};
          },
          [](const AffineMeasure& a) {
            const auto [blo, bhi] = covering_box(a.base);
            Point lo{HUGE_VAL, HUGE_VAL}, hi{-HUGE_VAL, -HUGE_VAL};
            for (Point c : {blo, Point{bhi.x, blo.y}, bhi, Point{blo.x, bhi.y}}) {
              const Point p = a.a.apply(c) + a.b;
              lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
              hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
            }
            return std::pair{lo, hi};
          }},
      node(m).v);
}

bool has_bounded_support(const Measure& m) {
  return std::visit(
      Overloaded{
          [](const UniformMeasure&) { return true; },
          [](const GaussianMeasure&) { return false; },
          [](const MixtureMeasure& mix) {
            return std::all_of(mix.components.begin(), mix.components.end(),
                               [](const Measure& c) { return has_bounded_support(c); });
          },
          [](const AffineMeasure& a) { return has_bounded_support(a.base); }},
      node(m).v);
}

}  // namespace tripois
