#pragma once

#include <utility>
#include <variant>
#include <vector>

namespace tripois {

// Absolute tolerance for collinearity and interval merging.
inline constexpr double kGeomEps = 1e-12;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point a, Point b) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
double norm(Point a);

// The line {x : x . (cos theta, sin theta) = r} with theta in [0, pi).
class LineRT {
 public:
  LineRT() = default;
  // Any real theta is accepted and folded into [0, pi), flipping r as needed.
  LineRT(double r, double theta);

  double r() const { return r_; }
  double theta() const { return theta_; }
  Point normal() const;
  Point direction() const;  // normal rotated by +pi/2

 private:
  double r_ = 0.0;
  double theta_ = 0.0;
};

// Folds an arbitrary angle into [0, pi); returns the folded angle and
// whether the direction was reversed (i.e. r must change sign).
std::pair<double, bool> fold_angle(double theta);

struct ConvexPolygon {
  std::vector<Point> vertices;  // counter-clockwise
};

struct SimplePolygon {
  std::vector<Point> vertices;  // counter-clockwise, non-self-intersecting
};

struct Disk {
  Point center;
  double radius = 1.0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

// Intersection of a line with a region, as sorted disjoint intervals of the
// arc-length coordinate t along LineRT::direction() measured from r*normal.
struct ChordSet {
  std::vector<Interval> intervals;
  double total_length() const;
};

// A planar set of finite positive area. Immutable after construction.
class Region {
 public:
  using Shape = std::variant<ConvexPolygon, SimplePolygon, Disk>;

  // Vertices may be given in either orientation; they are stored
  // counter-clockwise. Throws InputError on degenerate input, and for the
  // convex variant also on non-convex input.
  static Region convex_polygon(std::vector<Point> vertices);
  static Region simple_polygon(std::vector<Point> vertices);
  static Region disk(Point center, double radius);
  static Region rectangle(Point corner, double width, double height);

  const Shape& shape() const { return shape_; }
  bool is_disk() const { return std::holds_alternative<Disk>(shape_); }
  bool is_convex() const { return !std::holds_alternative<SimplePolygon>(shape_); }
  const std::vector<Point>& vertices() const;  // empty for disks

  double area() const { return area_; }
  bool contains(Point p) const;
  Interval projection_range(double theta) const;
  // Bounding box as (lower-left, upper-right).
  std::pair<Point, Point> bounding_box() const;
  double diameter() const;

 private:
  explicit Region(Shape shape);
  Shape shape_;
  double area_ = 0.0;
};

double triangle_area(Point a, Point b, Point c);
// Throws InputError("degenerate pair") when a == b.
LineRT line_through(Point a, Point b);
double point_line_distance(Point p, const LineRT& l);

ChordSet chord_set(const Region& s, const LineRT& l);
double chord_length(const Region& s, const LineRT& l);
double region_area(const Region& s);
Interval projection_range(const Region& s, double theta);

// Sorted projections of the polygon vertices onto direction theta (for a
// disk: the two support values and the centre). These are the kinks of
// r -> chord_length(s, (r, theta)).
std::vector<double> projection_breakpoints(const Region& s, double theta);

// Angles in [0, pi) at which two vertices project to the same value; between
// consecutive ones the vertex ordering along the normal is fixed.
std::vector<double> kink_angles(const Region& s);

// Mean and second central moments of the uniform law on s.
struct RegionMoments {
  Point centroid;
  double vxx = 0.0;
  double vxy = 0.0;
  double vyy = 0.0;
};
RegionMoments region_moments(const Region& s);

}  // namespace tripois
