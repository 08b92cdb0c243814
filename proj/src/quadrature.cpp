#include "tripois/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "tripois/error.hpp"

namespace tripois::quad {

namespace {

Rule build_rule() {
  Rule rule;
  constexpr int n = kNodes;
  for (int i = 0; i < n / 2; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

struct Segment {
  std::function<double(double)> g;  // integrand in panel coordinates
  double lo;
  double hi;
  double share;  // fraction of the total tolerance
};

struct Panel {
  std::size_t segment;
  double lo;
  double hi;
  double whole;
  double share;
};

}  // namespace

const Rule& gauss_legendre() {
  static const Rule rule = build_rule();
  return rule;
}

double gauss_legendre(const std::function<double(double)>& f, double a,
                      double b) {
  const Rule& rule = gauss_legendre();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (int i = 0; i < kNodes; ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return sum * half;
}

Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& options) {
  const double bp[2] = {a, b};
  return integrate(f, std::span<const double>(bp, 2), options);
}

Result integrate(const std::function<double(double)>& f,
                 std::span<const double> breakpoints, const Options& options) {
  std::vector<double> pts(breakpoints.begin(), breakpoints.end());
  if (pts.size() < 2) return {};
  if (options.substitute_ends && pts.size() == 2) {
    pts.insert(pts.begin() + 1, 0.5 * (pts[0] + pts[1]));
  }
  const double total = pts.back() - pts.front();
  if (!(total > 0.0)) return {};

  std::vector<Segment> segments;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double a = pts[i];
    const double b = pts[i + 1];
    const double h = b - a;
    if (!(h > 0.0)) continue;
    const double share = h / total;
    const bool first = i == 0;
    const bool last = i + 2 == pts.size();
    if (options.substitute_ends && first) {
      segments.push_back({[&f, a, h](double s) { return f(a + h * s * s) * 2.0 * h * s; },
                          0.0, 1.0, share});
    } else if (options.substitute_ends && last) {
      segments.push_back({[&f, b, h](double s) { return f(b - h * s * s) * 2.0 * h * s; },
                          0.0, 1.0, share});
    } else {
      segments.push_back({f, a, b, share});
    }
  }

  std::vector<Panel> pending;
  double estimate = 0.0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const Segment& s = segments[i];
    const double w = gauss_legendre(s.g, s.lo, s.hi);
    estimate += w;
    pending.push_back({i, s.lo, s.hi, w, s.share});
  }
  const double target = std::max(options.rel_tol * std::abs(estimate),
                                 options.abs_floor);

  Result result;
  result.panels = static_cast<int>(pending.size());
  double accepted = 0.0;
  while (!pending.empty()) {
    const Panel p = pending.back();
    pending.pop_back();
    const Segment& s = segments[p.segment];
    const double mid = 0.5 * (p.lo + p.hi);
    const double left = gauss_legendre(s.g, p.lo, mid);
    const double right = gauss_legendre(s.g, mid, p.hi);
    result.panels += 2;
    const double diff = std::abs(left + right - p.whole);
    const bool tiny = !(mid > p.lo && mid < p.hi);
    if (diff <= target * p.share || tiny) {
      accepted += left + right;
      result.error += diff;
      continue;
    }
    if (result.panels > options.max_panels) {
      double best = accepted + left + right;
      double err = result.error + diff;
      for (const Panel& q : pending) {
        best += q.whole;
        err += std::abs(q.whole) * 1e-3;
      }
      throw NonConvergence("adaptive quadrature exceeded its panel budget",
                           best, err);
    }
    pending.push_back({p.segment, p.lo, mid, left, 0.5 * p.share});
    pending.push_back({p.segment, mid, p.hi, right, 0.5 * p.share});
  }
  result.value = accepted;
  return result;
}

}  // namespace tripois::quad
