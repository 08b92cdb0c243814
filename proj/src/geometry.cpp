#include "tripois/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tripois/error.hpp"

namespace tripois {

namespace {

constexpr double kPi = std::numbers::pi;

double signed_area(const std::vector<Point>& v) {
  double twice = 0.0;
  for (std::size_t i = 0, n = v.size(); i < n; ++i) {
    twice += cross(v[i], v[(i + 1) % n]);
  }
  return 0.5 * twice;
}

void check_finite(Point p) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
    throw InputError("non-finite coordinate");
  }
}

std::vector<Point> normalize_polygon(std::vector<Point> v) {
  if (v.size() < 3) throw InputError("polygon needs at least 3 vertices");
  for (const Point& p : v) check_finite(p);
  for (std::size_t i = 0, n = v.size(); i < n; ++i) {
    if (v[i] == v[(i + 1) % n]) {
      throw InputError("polygon has repeated consecutive vertices");
    }
  }
  double a = signed_area(v);
  if (!(std::abs(a) > 0.0)) throw InputError("polygon has zero area");
  if (a < 0.0) std::reverse(v.begin(), v.end());
  return v;
}

// Proper or touching intersection of closed segments pq and rs.
bool segments_intersect(Point p, Point q, Point r, Point s) {
  auto orient = [](Point a, Point b, Point c) {
    double v = cross(b - a, c - a);
    return (v > kGeomEps) - (v < -kGeomEps);
  };
  auto on_segment = [](Point a, Point b, Point c) {
    return std::min(a.x, b.x) - kGeomEps <= c.x &&
           c.x <= std::max(a.x, b.x) + kGeomEps &&
           std::min(a.y, b.y) - kGeomEps <= c.y &&
           c.y <= std::max(a.y, b.y) + kGeomEps;
  };
  int o1 = orient(p, q, r), o2 = orient(p, q, s);
  int o3 = orient(r, s, p), o4 = orient(r, s, q);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p, q, r)) return true;
  if (o2 == 0 && on_segment(p, q, s)) return true;
  if (o3 == 0 && on_segment(r, s, p)) return true;
  if (o4 == 0 && on_segment(r, s, q)) return true;
  return false;
}

std::vector<Interval> merge_intervals(std::vector<Interval> in) {
  std::sort(in.begin(), in.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> out;
  for (const Interval& iv : in) {
    if (!out.empty() && iv.lo <= out.back().hi + kGeomEps) {
      out.back().hi = std::max(out.back().hi, iv.hi);
    } else {
      out.push_back(iv);
    }
  }
  std::erase_if(out, [](const Interval& iv) { return !(iv.length() > 0.0); });
  return out;
}

ChordSet chord_convex(const std::vector<Point>& v, const LineRT& l) {
  const Point n = l.normal();
  const Point d = l.direction();
  const Point base = l.r() * n;
  double lo = -HUGE_VAL, hi = HUGE_VAL;
  for (std::size_t i = 0, m = v.size(); i < m; ++i) {
    const Point e = v[(i + 1) % m] - v[i];
    // inside iff c0 + t * c1 >= 0
    const double c0 = cross(e, base - v[i]);
    const double c1 = cross(e, d);
    if (c1 == 0.0) {
      if (c0 < 0.0) return {};
      continue;
    }
    const double t = -c0 / c1;
    if (c1 > 0.0) {
      lo = std::max(lo, t);
    } else {
      hi = std::min(hi, t);
    }
  }
  if (!(hi - lo > kGeomEps)) return {};
  return ChordSet{{Interval{lo, hi}}};
}

ChordSet chord_simple(const std::vector<Point>& v, const LineRT& l) {
  const Point n = l.normal();
  const Point d = l.direction();
  const std::size_t m = v.size();
  std::vector<double> s(m), t(m);
  for (std::size_t i = 0; i < m; ++i) {
    s[i] = dot(v[i], n) - l.r();
    // vertices on the line are nudged off it along the normal
    if (std::abs(s[i]) <= kGeomEps) s[i] = kGeomEps;
    t[i] = dot(v[i], d);
  }
  std::vector<double> crossings;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = (i + 1) % m;
    if ((s[i] > 0.0) != (s[j] > 0.0)) {
      crossings.push_back(t[i] + (t[j] - t[i]) * (s[i] / (s[i] - s[j])));
    }
  }
  std::sort(crossings.begin(), crossings.end());
  std::vector<Interval> raw;
  for (std::size_t i = 0; i + 1 < crossings.size(); i += 2) {
    raw.push_back({crossings[i], crossings[i + 1]});
  }
  return ChordSet{merge_intervals(std::move(raw))};
}

ChordSet chord_disk(const Disk& c, const LineRT& l) {
  const double offset = dot(c.center, l.normal()) - l.r();
  const double h2 = c.radius * c.radius - offset * offset;
  if (!(h2 > 0.0)) return {};
  const double half = std::sqrt(h2);
  const double mid = dot(c.center, l.direction());
  return ChordSet{{Interval{mid - half, mid + half}}};
}

}  // namespace

double norm(Point a) { return std::hypot(a.x, a.y); }

std::pair<double, bool> fold_angle(double theta) {
  bool flipped = false;
  double t = std::fmod(theta, 2.0 * kPi);
  if (t < 0.0) t += 2.0 * kPi;
  if (t >= kPi) {
    t -= kPi;
    flipped = true;
  }
  if (t >= kPi) t = 0.0;  // rounding guard
  return {t, flipped};
}

LineRT::LineRT(double r, double theta) {
  auto [t, flipped] = fold_angle(theta);
  theta_ = t;
  r_ = flipped ? -r : r;
}

Point LineRT::normal() const { return {std::cos(theta_), std::sin(theta_)}; }
Point LineRT::direction() const { return {-std::sin(theta_), std::cos(theta_)}; }

double ChordSet::total_length() const {
  double sum = 0.0;
  for (const Interval& iv : intervals) sum += iv.length();
  return sum;
}

Region::Region(Shape shape) : shape_(std::move(shape)) {
  if (const auto* c = std::get_if<Disk>(&shape_)) {
    area_ = kPi * c->radius * c->radius;
  } else {
    area_ = signed_area(vertices());
  }
}

Region Region::convex_polygon(std::vector<Point> vertices) {
  auto v = normalize_polygon(std::move(vertices));
  for (std::size_t i = 0, n = v.size(); i < n; ++i) {
    const Point e0 = v[(i + 1) % n] - v[i];
    const Point e1 = v[(i + 2) % n] - v[(i + 1) % n];
    if (cross(e0, e1) < -kGeomEps * std::max(1.0, norm(e0) * norm(e1))) {
      throw InputError("convex_polygon vertices are not convex");
    }
  }
  return Region(ConvexPolygon{std::move(v)});
}

Region Region::simple_polygon(std::vector<Point> vertices) {
  auto v = normalize_polygon(std::move(vertices));
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n])) {
        throw InputError("simple_polygon edges intersect");
      }
    }
  }
  return Region(SimplePolygon{std::move(v)});
}

Region Region::disk(Point center, double radius) {
  check_finite(center);
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InputError("disk radius must be positive");
  }
  return Region(Disk{center, radius});
}

Region Region::rectangle(Point corner, double width, double height) {
  check_finite(corner);
  if (!(width > 0.0) || !(height > 0.0) || !std::isfinite(width) ||
      !std::isfinite(height)) {
    throw InputError("rectangle sides must be positive");
  }
  return convex_polygon({corner,
                         {corner.x + width, corner.y},
                         {corner.x + width, corner.y + height},
                         {corner.x, corner.y + height}});
}

const std::vector<Point>& Region::vertices() const {
  static const std::vector<Point> kNone;
  if (const auto* p = std::get_if<ConvexPolygon>(&shape_)) return p->vertices;
  if (const auto* p = std::get_if<SimplePolygon>(&shape_)) return p->vertices;
  return kNone;
}

bool Region::contains(Point p) const {
  if (const auto* c = std::get_if<Disk>(&shape_)) {
    const Point q = p - c->center;
    return dot(q, q) <= c->radius * c->radius;
  }
  const auto& v = vertices();
  const std::size_t n = v.size();
  if (std::holds_alternative<ConvexPolygon>(shape_)) {
    for (std::size_t i = 0; i < n; ++i) {
      if (cross(v[(i + 1) % n] - v[i], p - v[i]) < 0.0) return false;
    }
    return true;
  }
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    if ((v[i].y > p.y) != (v[j].y > p.y)) {
      const double x =
          v[j].x + (p.y - v[j].y) * (v[i].x - v[j].x) / (v[i].y - v[j].y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

Interval Region::projection_range(double theta) const {
  const Point u{std::cos(theta), std::sin(theta)};
  if (const auto* c = std::get_if<Disk>(&shape_)) {
    const double m = dot(c->center, u);
    return {m - c->radius, m + c->radius};
  }
  Interval out{HUGE_VAL, -HUGE_VAL};
  for (const Point& p : vertices()) {
    const double s = dot(p, u);
    out.lo = std::min(out.lo, s);
    out.hi = std::max(out.hi, s);
  }
  return out;
}

std::pair<Point, Point> Region::bounding_box() const {
  if (const auto* c = std::get_if<Disk>(&shape_)) {
    const Point r{c->radius, c->radius};
    return {c->center - r, c->center + r};
  }
  Point lo{HUGE_VAL, HUGE_VAL}, hi{-HUGE_VAL, -HUGE_VAL};
  for (const Point& p : vertices()) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  return {lo, hi};
}

double Region::diameter() const {
  if (const auto* c = std::get_if<Disk>(&shape_)) return 2.0 * c->radius;
  const auto& v = vertices();
  double best = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      best = std::max(best, norm(v[i] - v[j]));
    }
  }
  return best;
}

double triangle_area(Point a, Point b, Point c) {
  return 0.5 * std::abs(cross(b - a, c - a));
}

LineRT line_through(Point a, Point b) {
  if (a == b) throw InputError("degenerate pair");
  // Orientation-independent: always measure from the lexicographically
  // smaller point so that line_through(a, b) == line_through(b, a) bitwise.
  if (std::pair(b.x, b.y) < std::pair(a.x, a.y)) std::swap(a, b);
  const Point d = b - a;
  const double len = norm(d);
  Point n{-d.y / len, d.x / len};
  double theta = std::atan2(n.y, n.x);
  if (theta < 0.0) {
    theta += kPi;
    n = {-n.x, -n.y};
  }
  if (theta >= kPi) {
    theta = 0.0;
    n = {-n.x, -n.y};
  }
  LineRT l(dot(a, n), theta);
  return l;
}

double point_line_distance(Point p, const LineRT& l) {
  return std::abs(dot(p, l.normal()) - l.r());
}

ChordSet chord_set(const Region& s, const LineRT& l) {
  return std::visit(
      [&](const auto& shape) -> ChordSet {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, Disk>) {
          return chord_disk(shape, l);
        } else if constexpr (std::is_same_v<T, ConvexPolygon>) {
          return chord_convex(shape.vertices, l);
        } else {
          return chord_simple(shape.vertices, l);
        }
      },
      s.shape());
}

double chord_length(const Region& s, const LineRT& l) {
  return chord_set(s, l).total_length();
}

double region_area(const Region& s) { return s.area(); }

Interval projection_range(const Region& s, double theta) {
  return s.projection_range(theta);
}

std::vector<double> projection_breakpoints(const Region& s, double theta) {
  const Point u{std::cos(theta), std::sin(theta)};
  std::vector<double> out;
  if (const auto* c = std::get_if<Disk>(&s.shape())) {
    const double m = dot(c->center, u);
    return {m - c->radius, m, m + c->radius};
  }
  for (const Point& p : s.vertices()) out.push_back(dot(p, u));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<double> kink_angles(const Region& s) {
  std::vector<double> out;
  const auto& v = s.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      const Point d = v[j] - v[i];
      out.push_back(fold_angle(std::atan2(d.y, d.x) + 0.5 * kPi).first);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double a, double b) { return b - a < 1e-14; }),
            out.end());
  return out;
}

RegionMoments region_moments(const Region& s) {
  if (const auto* c = std::get_if<Disk>(&s.shape())) {
    const double v = 0.25 * c->radius * c->radius;
    return {c->center, v, 0.0, v};
  }
  const auto& v = s.vertices();
  // Moments about the first vertex to limit cancellation.
  const Point o = v.front();
  double a = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0, n = v.size(); i < n; ++i) {
    const Point p = v[i] - o;
    const Point q = v[(i + 1) % n] - o;
    const double w = cross(p, q);
    a += w;
    sx += w * (p.x + q.x);
    sy += w * (p.y + q.y);
    sxx += w * (p.x * p.x + p.x * q.x + q.x * q.x);
    syy += w * (p.y * p.y + p.y * q.y + q.y * q.y);
    sxy += w * (p.x * q.y + 2.0 * p.x * p.y + 2.0 * q.x * q.y + q.x * p.y);
  }
  a *= 0.5;
  const double mx = sx / (6.0 * a);
  const double my = sy / (6.0 * a);
  RegionMoments m;
  m.centroid = {o.x + mx, o.y + my};
  m.vxx = sxx / (12.0 * a) - mx * mx;
  m.vyy = syy / (12.0 * a) - my * my;
  m.vxy = sxy / (24.0 * a) - mx * my;
  return m;
}

}  // namespace tripois
