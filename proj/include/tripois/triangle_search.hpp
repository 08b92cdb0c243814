#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tripois/geometry.hpp"

namespace tripois {

// Triangle on points i < j < k of a PointSet.
struct TriangleHit {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  std::uint32_t k = 0;
  double area = 0.0;

  friend bool operator==(const TriangleHit&, const TriangleHit&) = default;
};

// Ordering used by every search: area, then the index triple.
bool hit_less(const TriangleHit& a, const TriangleHit& b);

class PointSet {
 public:
  // Requires at least 3 points with finite coordinates.
  explicit PointSet(std::vector<Point> points);

  std::size_t size() const { return points_.size(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const { return points_; }

 private:
  std::vector<Point> points_;
};

inline constexpr std::size_t kBruteForceLimit = 512;

// Every triangle, sorted by hit_less. Throws InputError for n > 512.
std::vector<TriangleHit> all_areas_brute(const PointSet& ps);

// Exactly the k smallest triangles under hit_less, 1 <= k <= C(n,3).
std::vector<TriangleHit> smallest_k(const PointSet& ps, std::size_t k,
                                    int threads = 1);

struct CountResult {
  std::size_t count = 0;
  std::vector<TriangleHit> hits;  // sorted by hit_less
};

// All triangles with area <= beta.
CountResult count_below(const PointSet& ps, double beta, int threads = 1);

// Longest side of the triangle.
double triangle_diameter(const PointSet& ps, const TriangleHit& hit);

}  // namespace tripois
