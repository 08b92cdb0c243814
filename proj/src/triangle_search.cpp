#include "tripois/triangle_search.hpp"

#include <algorithm>
#include <array>
#include <tuple>
#include <atomic>
#include <cmath>
#include <limits>
#include <queue>

#include "tripois/error.hpp"
#include "tripois/parallel.hpp"

namespace tripois {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sqdist(const PointSet& ps, std::uint32_t a, std::uint32_t b) {
  // Always subtract in index order so every caller sees the same bits.
  if (b < a) std::swap(a, b);
  const Point d = ps[b] - ps[a];
  return d.x * d.x + d.y * d.y;
}

TriangleHit make_hit(const PointSet& ps, std::uint32_t a, std::uint32_t b,
                     std::uint32_t c) {
  if (a > b) std::swap(a, b);
  if (b > c) std::swap(b, c);
  if (a > b) std::swap(a, b);
  return {a, b, c, triangle_area(ps[a], ps[b], ps[c])};
}

// Every triangle is reported from exactly one pair: its longest side, ties
// broken towards the lexicographically smaller pair. The foot of the
// perpendicular from the third vertex then lies on that side.
bool is_longest_side(const PointSet& ps, std::uint32_t i, std::uint32_t j,
                     std::uint32_t k) {
  const double dij = sqdist(ps, i, j);
  auto beats = [&](std::uint32_t a, std::uint32_t b) {
    if (a > b) std::swap(a, b);
    const double d = sqdist(ps, a, b);
    if (dij != d) return dij > d;
    return std::pair(i, j) < std::pair(a, b);
  };
  return beats(i, k) && beats(j, k);
}

// Uniform bucket grid over the bounding box of the points.
class Grid {
 public:
  explicit Grid(const PointSet& ps) : ps_(ps) {
    lo_ = hi_ = ps[0];
    double scale = 0.0;
    for (const Point& p : ps.points()) {
      lo_ = {std::min(lo_.x, p.x), std::min(lo_.y, p.y)};
      hi_ = {std::max(hi_.x, p.x), std::max(hi_.y, p.y)};
      scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
    }
    diag_ = norm(hi_ - lo_);
    const double per_side = std::ceil(std::sqrt(static_cast<double>(ps.size())));
    cell_ = diag_ > 0.0 ? diag_ / per_side : 1.0;
    cols_ = static_cast<int>((hi_.x - lo_.x) / cell_) + 1;
    rows_ = static_cast<int>((hi_.y - lo_.y) / cell_) + 1;
    pad_ = kGeomEps * (1.0 + scale);

    std::vector<int> cell_of(ps.size());
    start_.assign(static_cast<std::size_t>(cols_) * rows_ + 1, 0);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      cell_of[i] = column(ps[i].x) * rows_ + row(ps[i].y);
      ++start_[cell_of[i] + 1];
    }
    for (std::size_t c = 1; c < start_.size(); ++c) start_[c] += start_[c - 1];
    members_.resize(ps.size());
    std::vector<std::uint32_t> fill(start_.begin(), start_.end() - 1);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      members_[fill[cell_of[i]]++] = static_cast<std::uint32_t>(i);
    }
  }

  double diagonal() const { return diag_; }
  double pad() const { return pad_; }

  int column(double x) const {
    return std::clamp(static_cast<int>(std::floor((x - lo_.x) / cell_)), 0, cols_ - 1);
  }
  int row(double y) const {
    return std::clamp(static_cast<int>(std::floor((y - lo_.y) / cell_)), 0, rows_ - 1);
  }

  // Calls visit(k) for every point in a cell that meets the convex
  // quadrilateral q (an over-approximation of the points inside q).
  template <class Visit>
  void for_each_in_quad(const std::array<Point, 4>& q, Visit&& visit) const {
    double xmin = kInf, xmax = -kInf;
    for (const Point& p : q) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
    }
    const int c0 = column(xmin), c1 = column(xmax);
    for (int c = c0; c <= c1; ++c) {
      const double sx0 = lo_.x + c * cell_ - pad_;
      const double sx1 = lo_.x + (c + 1) * cell_ + pad_;
      double ymin = kInf, ymax = -kInf;
      for (int e = 0; e < 4; ++e) {
        Point a = q[e], b = q[(e + 1) % 4];
        if (a.x > b.x) std::swap(a, b);
        const double xa = std::max(a.x, sx0);
        const double xb = std::min(b.x, sx1);
        if (xa > xb) continue;
        if (b.x == a.x) {
          ymin = std::min({ymin, a.y, b.y});
          ymax = std::max({ymax, a.y, b.y});
          continue;
        }
        const double slope = (b.y - a.y) / (b.x - a.x);
        const double ya = a.y + slope * (xa - a.x);
        const double yb = a.y + slope * (xb - a.x);
        ymin = std::min({ymin, ya, yb});
        ymax = std::max({ymax, ya, yb});
      }
      if (ymin > ymax) continue;
      const int r0 = row(ymin - pad_), r1 = row(ymax + pad_);
      const std::size_t first = start_[c * rows_ + r0];
      const std::size_t last = start_[c * rows_ + r1 + 1];
      for (std::size_t m = first; m < last; ++m) visit(members_[m]);
    }
  }

  template <class Visit>
  void for_each_near(Point p, Visit&& visit) const {
    const int c = column(p.x), r = row(p.y);
    for (int cc = std::max(0, c - 1); cc <= std::min(cols_ - 1, c + 1); ++cc) {
      const int r0 = std::max(0, r - 1), r1 = std::min(rows_ - 1, r + 1);
      for (std::size_t m = start_[cc * rows_ + r0]; m < start_[cc * rows_ + r1 + 1]; ++m) {
        visit(members_[m]);
      }
    }
  }

 private:
  const PointSet& ps_;
  Point lo_, hi_;
  double diag_ = 0.0;
  double cell_ = 1.0;
  double pad_ = 0.0;
  int cols_ = 1, rows_ = 1;
  std::vector<std::uint32_t> start_;
  std::vector<std::uint32_t> members_;
};

// Visits every triangle whose longest side is (i, j) and whose area may be
// <= threshold(); emit(hit) receives the exact hits.
template <class Threshold, class Emit>
void scan_pair(const PointSet& ps, const Grid& grid, std::uint32_t i,
               std::uint32_t j, Threshold&& threshold, Emit&& emit) {
  auto consider = [&](std::uint32_t k) {
    if (k == i || k == j) return;
    if (!is_longest_side(ps, i, j, k)) return;
    const TriangleHit hit = make_hit(ps, i, j, k);
    if (hit.area <= threshold()) emit(hit);
  };
  const Point a = ps[i];
  const Point b = ps[j];
  const double len = std::sqrt(sqdist(ps, i, j));
  if (len == 0.0) {
    grid.for_each_near(a, consider);
    return;
  }
  const double beta = threshold();
  double half = 2.0 * beta / len;
  half = std::min(half, grid.diagonal() + 1.0);
  half += grid.pad() + 1e-9 * half;
  const Point d = (1.0 / len) * (b - a);
  const Point nrm{-d.y, d.x};
  const Point a0 = a - grid.pad() * d;
  const Point b0 = b + grid.pad() * d;
  const std::array<Point, 4> quad{a0 - half * nrm, b0 - half * nrm,
                                  b0 + half * nrm, a0 + half * nrm};
  grid.for_each_in_quad(quad, consider);
}

using HitHeap =
    std::priority_queue<TriangleHit, std::vector<TriangleHit>,
                        decltype(&hit_less)>;

void atomic_min(std::atomic<double>& target, double value) {
  double cur = target.load();
  while (value < cur && !target.compare_exchange_weak(cur, value)) {
  }
}

std::uint64_t choose3(std::uint64_t n) {
  return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6;
}

}  // namespace

bool hit_less(const TriangleHit& a, const TriangleHit& b) {
  if (a.area != b.area) return a.area < b.area;
  return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
}

PointSet::PointSet(std::vector<Point> points) : points_(std::move(points)) {
  if (points_.size() < 3) throw InputError("point set needs at least 3 points");
  if (points_.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw InputError("point set too large");
  }
  for (const Point& p : points_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw InputError("non-finite coordinate in point set");
    }
  }
}

std::vector<TriangleHit> all_areas_brute(const PointSet& ps) {
  const std::size_t n = ps.size();
  if (n > kBruteForceLimit) {
    throw InputError("all_areas_brute is limited to 512 points; use smallest_k or count_below");
  }
  std::vector<TriangleHit> out;
  out.reserve(choose3(n));
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      for (std::uint32_t k = j + 1; k < n; ++k) {
        out.push_back({i, j, k, triangle_area(ps[i], ps[j], ps[k])});
      }
    }
  }
  std::sort(out.begin(), out.end(), hit_less);
  return out;
}

std::vector<TriangleHit> smallest_k(const PointSet& ps, std::size_t k,
                                    int threads) {
  const std::size_t n = ps.size();
  if (k < 1 || k > choose3(n)) throw InputError("k out of range");
  if (threads <= 0) threads = default_threads();

  // Seed the threshold with the k-th smallest of n - 2 consecutive triples.
  double seed = kInf;
  if (n - 2 >= k) {
    std::vector<double> areas;
    for (std::uint32_t i = 0; i + 2 < n; ++i) {
      areas.push_back(make_hit(ps, i, i + 1, i + 2).area);
    }
    std::nth_element(areas.begin(), areas.begin() + (k - 1), areas.end());
    seed = areas[k - 1];
  }

  const Grid grid(ps);
  std::atomic<double> shared{seed};
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  std::vector<std::vector<TriangleHit>> found(workers);
  parallel_for(workers, static_cast<int>(workers), [&](std::size_t w) {
    HitHeap heap(&hit_less);
    auto threshold = [&] {
      double t = shared.load(std::memory_order_relaxed);
      if (heap.size() == k) t = std::min(t, heap.top().area);
      return t;
    };
    auto emit = [&](const TriangleHit& hit) {
      if (heap.size() < k) {
        heap.push(hit);
      } else if (hit_less(hit, heap.top())) {
        heap.pop();
        heap.push(hit);
      } else {
        return;
      }
      if (heap.size() == k) atomic_min(shared, heap.top().area);
    };
    for (std::size_t i = w; i < n; i += workers) {
      for (std::size_t j = i + 1; j < n; ++j) {
        scan_pair(ps, grid, static_cast<std::uint32_t>(i),
                  static_cast<std::uint32_t>(j), threshold, emit);
      }
    }
    while (!heap.empty()) {
      found[w].push_back(heap.top());
      heap.pop();
    }
  });

  std::vector<TriangleHit> all;
  for (auto& part : found) all.insert(all.end(), part.begin(), part.end());
  std::sort(all.begin(), all.end(), hit_less);
  if (all.size() < k) throw InvariantViolation("smallest_k found fewer than k triangles");
  all.resize(k);
  return all;
}

CountResult count_below(const PointSet& ps, double beta, int threads) {
  if (!(beta >= 0.0)) throw InputError("beta must be non-negative");
  if (threads <= 0) threads = default_threads();
  const std::size_t n = ps.size();
  const Grid grid(ps);
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  std::vector<std::vector<TriangleHit>> found(workers);
  parallel_for(workers, static_cast<int>(workers), [&](std::size_t w) {
    auto threshold = [beta] { return beta; };
    auto emit = [&](const TriangleHit& hit) { found[w].push_back(hit); };
    for (std::size_t i = w; i < n; i += workers) {
      for (std::size_t j = i + 1; j < n; ++j) {
        scan_pair(ps, grid, static_cast<std::uint32_t>(i),
                  static_cast<std::uint32_t>(j), threshold, emit);
      }
    }
  });
  CountResult out;
  for (auto& part : found) out.hits.insert(out.hits.end(), part.begin(), part.end());
  std::sort(out.hits.begin(), out.hits.end(), hit_less);
  out.count = out.hits.size();
  return out;
}

double triangle_diameter(const PointSet& ps, const TriangleHit& hit) {
  return std::sqrt(std::max({sqdist(ps, hit.i, hit.j), sqdist(ps, hit.i, hit.k),
                             sqdist(ps, hit.j, hit.k)}));
}

}  // namespace tripois
