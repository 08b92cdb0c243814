#include "tripois/kappa.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "tripois/error.hpp"
#include "tripois/parallel.hpp"
#include "tripois/quadrature.hpp"

namespace tripois {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kBlockSize = 1 << 14;

std::vector<double> theta_breaks(std::vector<double> kinks) {
  std::vector<double> out{0.0};
  for (double k : kinks) {
    if (k > out.back() && k < kPi) out.push_back(k);
  }
  out.push_back(kPi);
  return out;
}

// Integral over theta in [0, pi) and r of g(r, theta), where g vanishes
// outside the breakpoint range returned by r_breaks(theta).
template <class G, class Breaks>
double integrate_over_lines(G&& g, Breaks&& r_breaks,
                            const std::vector<double>& kinks, double tol) {
  quad::Options inner;
  inner.rel_tol = 0.1 * tol;
  inner.substitute_ends = true;
  quad::Options outer;
  outer.rel_tol = 0.5 * tol;
  outer.max_panels = 4000;
  auto over_r = [&](double theta) {
    const std::vector<double> bp = r_breaks(theta);
    return quad::integrate([&](double r) { return g(r, theta); }, bp, inner)
        .value;
  };
  const std::vector<double> tb = theta_breaks(kinks);
  return quad::integrate(over_r, tb, outer).value;
}

double line_power_integral(const Measure& m, int power, double tol) {
  return integrate_over_lines(
      [&](double r, double theta) {
        return std::pow(marginal(m, r, theta), power);
      },
      [&](double theta) { return support_breakpoints(m, theta); },
      kink_angles(m), tol);
}

template <class Value>
Estimate blocked_monte_carlo(std::size_t samples, const RngStream& rng,
                             int threads, Value&& value,
                             std::uint64_t* redraws_out) {
  const std::size_t blocks = (samples + kBlockSize - 1) / kBlockSize;
  std::vector<RunningStats> partial(blocks);
  std::vector<std::uint64_t> redraws(blocks, 0);
  parallel_for(blocks, threads, [&](std::size_t b) {
    RngStream stream = rng.substream(b);
    const std::size_t count = std::min(kBlockSize, samples - b * kBlockSize);
    for (std::size_t i = 0; i < count; ++i) {
      partial[b].add(value(stream, redraws[b]));
    }
  });
  RunningStats total;
  std::uint64_t redrawn = 0;
  for (std::size_t b = 0; b < blocks; ++b) {
    total.merge(partial[b]);
    redrawn += redraws[b];
  }
  if (redraws_out) *redraws_out = redrawn;
  return total.estimate();
}

}  // namespace

std::string to_string(KappaMethod method) {
  switch (method) {
    case KappaMethod::kQuadrature:
      return "quadrature";
    case KappaMethod::kMonteCarlo:
      return "monte_carlo";
    case KappaMethod::kClosedForm:
      return "closed_form";
  }
  return "unknown";
}

KappaEstimate kappa_quadrature(const Measure& m, double tol) {
  if (!(tol > 0.0)) throw InputError("tol must be positive");
  const double value = (2.0 / 3.0) * line_power_integral(m, 3, tol);
  return {value, 0.0, KappaMethod::kQuadrature, 0};
}

KappaEstimate kappa_monte_carlo(const Measure& m, std::size_t samples,
                                const RngStream& rng, int threads) {
  if (samples < 1000) throw InputError("kappa_monte_carlo needs >= 1000 samples");
  std::uint64_t redraws = 0;
  const Estimate e = blocked_monte_carlo(
      samples, rng, threads,
      [&](RngStream& s, std::uint64_t& redrawn) {
        for (;;) {
          const Point x = sample(m, s);
          const Point y = sample(m, s);
          if (x == y) {
            ++redrawn;
            continue;
          }
          return (2.0 / 3.0) * marginal(m, line_through(x, y)) / norm(x - y);
        }
      },
      &redraws);
  return {e.value, e.se, KappaMethod::kMonteCarlo, redraws};
}

std::optional<KappaEstimate> kappa_closed_form(const Measure& m) {
  const MeasureNode& n = m.node();
  if (const auto* u = std::get_if<UniformMeasure>(&n.v)) {
    if (!u->region.is_convex()) return std::nullopt;
    return KappaEstimate{2.0 / u->region.area(), 0.0, KappaMethod::kClosedForm, 0};
  }
  if (const auto* g = std::get_if<GaussianMeasure>(&n.v)) {
    return KappaEstimate{1.0 / (3.0 * std::sqrt(3.0 * g->cov.determinant())), 0.0,
                         KappaMethod::kClosedForm, 0};
  }
  return std::nullopt;
}

KappaEstimate kappa_best(const Measure& m, double tol) {
  if (auto closed = kappa_closed_form(m)) return *closed;
  return kappa_quadrature(m, tol);
}

double crofton_integral(const Region& s, double p, double tol) {
  if (!(p > 0.0)) throw InputError("p must be positive");
  if (!(tol > 0.0)) throw InputError("tol must be positive");
  return integrate_over_lines(
      [&](double r, double theta) {
        const double l = chord_length(s, LineRT(r, theta));
        return l > 0.0 ? std::pow(l, p) : 0.0;
      },
      [&](double theta) { return projection_breakpoints(s, theta); },
      kink_angles(s), tol);
}

Estimate mean_chord_ratio(const Region& s, std::size_t samples,
                          const RngStream& rng, int threads) {
  if (samples < 1000) throw InputError("mean_chord_ratio needs >= 1000 samples");
  const Measure m = Measure::uniform(s);
  return blocked_monte_carlo(
      samples, rng, threads,
      [&](RngStream& st, std::uint64_t& redrawn) {
        for (;;) {
          const Point x = sample(m, st);
          const Point y = sample(m, st);
          if (x == y) {
            ++redrawn;
            continue;
          }
          return chord_length(s, line_through(x, y)) / norm(x - y);
        }
      },
      nullptr);
}

double inv_distance_moment(const Measure& m, double tol) {
  if (!(tol > 0.0)) throw InputError("tol must be positive");
  const double value = line_power_integral(m, 2, tol);
  const double bound = marginal_bound(m) * kPi;
  if (value > bound * (1.0 + 1e-9)) {
    throw InvariantViolation("E|X-Y|^-1 exceeds pi * marginal bound");
  }
  return value;
}

double affine_invariant_lower_bound() { return 1.0 / (6.0 * kPi); }

double affine_invariant(const Measure& m, double tol) {
  const double det = covariance(m).determinant();
  if (!(det > 1e-300)) throw InputError("degenerate measure");
  const double value = kappa_best(m, tol).value * std::sqrt(det);
  if (value < affine_invariant_lower_bound() - 1e-6) {
    throw InvariantViolation("affine invariant below 1/(6 pi)");
  }
  return value;
}

}  // namespace tripois
