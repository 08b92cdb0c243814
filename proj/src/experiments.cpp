#include "tripois/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tripois/error.hpp"
#include "tripois/kappa.hpp"
#include "tripois/parallel.hpp"
#include "tripois/triangle_search.hpp"

namespace tripois {

namespace {

constexpr std::size_t kPiBlock = 1 << 14;

double cube(double x) { return x * x * x; }

double choose3(std::size_t n) {
  const double d = static_cast<double>(n);
  return d * (d - 1.0) * (d - 2.0) / 6.0;
}

// P(Z within distance h of the line) for Z ~ m.
double strip_probability(const Measure& m, const LineRT& l, double h) {
  const double p = marginal_cdf(m, l.r() + h, l.theta()) -
                   marginal_cdf(m, l.r() - h, l.theta());
  return std::clamp(p, 0.0, 1.0);
}

// Conditional P(Delta(x, y, Z) <= beta | x, y).
double conditional_small(const Measure& m, Point x, Point y, double beta) {
  const double d = norm(x - y);
  return strip_probability(m, line_through(x, y), 2.0 * beta / d);
}

// Integral of the quarter-plane-clipped disk profile; see disk_square_overlap.
double disk_below(double x, double y, double rad) {
  if (x <= -rad || y <= -rad) return 0.0;
  const double xc = std::min(x, rad);
  auto h_int = [rad](double u) {  // antiderivative of sqrt(rad^2 - u^2)
    u = std::clamp(u, -rad, rad);
    return 0.5 * (u * std::sqrt(rad * rad - u * u) + rad * rad * std::asin(u / rad));
  };
  if (y >= rad) return 2.0 * (h_int(xc) - h_int(-rad));
  const double c = std::sqrt(rad * rad - y * y);
  double total = 0.0;
  auto piece = [&](double a, double b, bool inner) {
    b = std::min(b, xc);
    if (b <= a) return;
    if (inner) {
      total += y * (b - a) + (h_int(b) - h_int(a));
    } else if (y > 0.0) {
      total += 2.0 * (h_int(b) - h_int(a));
    }
  };
  piece(-rad, -c, false);
  piece(-c, c, true);
  piece(c, rad, false);
  return total;
}

}  // namespace

void validate(const SimConfig& cfg) {
  if (cfg.n < 3) throw InputError("n must be at least 3");
  if (cfg.replicates < 1) throw InputError("replicates must be positive");
  if (cfg.k_order < 1) throw InputError("k_order must be positive");
  if (static_cast<double>(cfg.k_order) > choose3(cfg.n)) {
    throw InputError("k_order exceeds the number of triangles");
  }
  if (cfg.alphas.empty()) throw InputError("alphas must not be empty");
  for (std::size_t i = 0; i < cfg.alphas.size(); ++i) {
    if (!(cfg.alphas[i] > 0.0) || !std::isfinite(cfg.alphas[i])) {
      throw InputError("alphas must be positive");
    }
    if (i > 0 && !(cfg.alphas[i] > cfg.alphas[i - 1])) {
      throw InputError("alphas must be strictly increasing");
    }
  }
}

std::vector<double> SimResult::scaled(std::size_t order) const {
  std::vector<double> out;
  out.reserve(replicates.size());
  for (const auto& r : replicates) out.push_back(r.scaled.at(order));
  return out;
}

std::vector<std::uint64_t> SimResult::counts(std::size_t alpha_index) const {
  std::vector<std::uint64_t> out;
  out.reserve(replicates.size());
  for (const auto& r : replicates) out.push_back(r.counts.at(alpha_index));
  return out;
}

std::vector<double> SimResult::diameters() const {
  std::vector<double> out;
  out.reserve(replicates.size());
  for (const auto& r : replicates) out.push_back(r.diameter);
  return out;
}

SimResult run_simulation(const SimConfig& cfg, int threads) {
  validate(cfg);
  SimResult result{cfg, std::vector<ReplicateRecord>(cfg.replicates)};
  const double n3 = cube(static_cast<double>(cfg.n));
  parallel_for(cfg.replicates, threads, [&](std::size_t rep) {
    RngStream rng(cfg.seed, rep);
    std::vector<Point> pts;
    pts.reserve(cfg.n);
    for (std::size_t i = 0; i < cfg.n; ++i) pts.push_back(sample(cfg.measure, rng));
    const PointSet ps(std::move(pts));

    ReplicateRecord& rec = result.replicates[rep];
    const auto smallest = smallest_k(ps, cfg.k_order, 1);
    for (const auto& hit : smallest) rec.scaled.push_back(n3 * hit.area);
    rec.diameter = triangle_diameter(ps, smallest.front());

    const auto below = count_below(ps, cfg.alphas.back() / n3, 1);
    for (double alpha : cfg.alphas) {
      const double beta = alpha / n3;
      rec.counts.push_back(static_cast<std::uint64_t>(std::count_if(
          below.hits.begin(), below.hits.end(),
          [beta](const TriangleHit& h) { return h.area <= beta; })));
    }
  });
  return result;
}

SimSummary summarize(const SimResult& result, double kappa) {
  SimSummary s;
  s.kappa = kappa;
  const auto d1 = result.scaled(0);
  RunningStats first, second;
  for (double x : d1) {
    first.add(x);
    second.add(x * x);
  }
  s.mean_delta1 = first.estimate();
  s.second_moment_delta1 = second.estimate();
  s.implied_kappa = 1.0 / s.mean_delta1.value;
  s.ks = ks_exponential(d1, kappa);
  for (std::size_t a = 0; a < result.config.alphas.size(); ++a) {
    const auto counts = result.counts(a);
    RunningStats cs;
    for (auto c : counts) cs.add(static_cast<double>(c));
    AlphaSummary as;
    as.alpha = result.config.alphas[a];
    as.mean_count = cs.estimate();
    as.tv_to_poisson = tv_to_poisson(counts, as.mean_count.value);
    as.limit_mean = kappa * as.alpha;
    s.per_alpha.push_back(as);
  }
  s.median_diameter = median(result.diameters());
  return s;
}

PiEstimates estimate_pi(const Measure& m, double beta, std::size_t samples,
                        const RngStream& rng, PiMethod method, int threads) {
  if (!(beta > 0.0)) throw InputError("beta must be positive");
  if (samples < 10000) throw InputError("estimate_pi needs at least 1e4 samples");
  const std::size_t blocks = (samples + kPiBlock - 1) / kPiBlock;
  struct Partial {
    RunningStats pi, pi1, pi2;
  };
  std::vector<Partial> partial(blocks);
  parallel_for(blocks, threads, [&](std::size_t b) {
    RngStream st = rng.substream(b);
    const std::size_t count = std::min(kPiBlock, samples - b * kPiBlock);
    Partial& acc = partial[b];
    for (std::size_t s = 0; s < count; ++s) {
      const Point u = sample(m, st);
      const Point v = sample(m, st);
      const Point x = sample(m, st);
      const Point y = sample(m, st);
      const Point z = sample(m, st);
      if (method == PiMethod::kIndicator) {
        const bool a = triangle_area(x, y, z) <= beta;
        const bool b1 = triangle_area(x, u, v) <= beta;
        const bool b2 = triangle_area(x, y, v) <= beta;
        acc.pi.add(a);
        acc.pi1.add(a && b1);
        acc.pi2.add(a && b2);
      } else {
        if (x == y || x == u) {
          --s;  // coincident draw: redraw the quintuple
          continue;
        }
        const double qxy = conditional_small(m, x, y, beta);
        const double qxu = conditional_small(m, x, u, beta);
        acc.pi.add(qxy);
        acc.pi1.add(qxy * qxu);
        acc.pi2.add(qxy * qxy);
      }
    }
  });
  Partial total;
  for (const Partial& p : partial) {
    total.pi.merge(p.pi);
    total.pi1.merge(p.pi1);
    total.pi2.merge(p.pi2);
  }
  return {beta, total.pi.estimate(), total.pi1.estimate(), total.pi2.estimate(),
          samples};
}

Estimate lambda_n(const Measure& m, std::size_t n, double alpha,
                  std::size_t samples, const RngStream& rng, PiMethod method,
                  int threads) {
  if (n < 3) throw InputError("n must be at least 3");
  if (!(alpha >= 0.0)) throw InputError("alpha must be non-negative");
  if (alpha == 0.0) return {0.0, 0.0};
  const double beta = alpha / cube(static_cast<double>(n));
  const PiEstimates pe = estimate_pi(m, beta, samples, rng, method, threads);
  const double c = choose3(n);
  return {c * pe.pi.value, c * pe.pi.se};
}

double chen_stein_bound(std::size_t n, double /*alpha*/, const Estimate& pi2,
                        double lambda) {
  if (!(lambda > 0.0)) throw InputError("lambda must be positive");
  const double n5 = std::pow(static_cast<double>(n), 5);
  return -std::expm1(-lambda) / (2.0 * lambda) * n5 * pi2.value;
}

bool TailReport::ok() const {
  return std::none_of(entries.begin(), entries.end(),
                      [](const TailEntry& e) { return e.violated; });
}

TailReport tail_bound_check(const SimResult& result, const Measure& m,
                            std::size_t n, const std::vector<double>& alphas,
                            std::size_t samples, const RngStream& rng,
                            int threads) {
  if (result.replicates.size() < 1000) {
    throw InputError("tail_bound_check needs at least 1000 replicates");
  }
  const auto d1 = result.scaled(0);
  const double reps = static_cast<double>(d1.size());
  const double n5 = std::pow(static_cast<double>(n), 5);
  TailReport report;
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    TailEntry e;
    e.alpha = alphas[a];
    const double above = static_cast<double>(std::count_if(
        d1.begin(), d1.end(), [&](double x) { return x > e.alpha; }));
    e.survival = above / reps;
    e.survival_se = std::sqrt(e.survival * (1.0 - e.survival) / reps);
    if (e.alpha > 0.0) {
      const double beta = e.alpha / cube(static_cast<double>(n));
      const PiEstimates pe =
          estimate_pi(m, beta, samples, rng.substream(a), PiMethod::kConditional, threads);
      e.lambda = choose3(n) * pe.pi.value;
      e.pi2 = pe.pi2.value;
      e.m_n = std::max(4.0 * e.lambda, 6.0 * n5 * e.pi2);
      e.bound = e.m_n > 0.0 ? std::exp(-e.lambda * e.lambda / e.m_n) : 1.0;
    }
    e.violated = e.survival > e.bound + 3.0 * e.survival_se;
    report.entries.push_back(e);
  }
  return report;
}

std::vector<MomentEntry> moment_check(const SimResult& result, double rate,
                                      int p_max) {
  if (!(rate > 0.0)) throw InputError("rate must be positive");
  const auto d1 = result.scaled(0);
  std::vector<MomentEntry> out;
  double factorial = 1.0;
  for (int p = 1; p <= p_max; ++p) {
    factorial *= p;
    RunningStats st;
    for (double x : d1) st.add(std::pow(x, p));
    MomentEntry e;
    e.p = p;
    e.sample = st.estimate();
    e.expected = factorial / std::pow(rate, p);
    e.within = std::abs(e.sample.value - e.expected) <= 3.0 * e.sample.se;
    out.push_back(e);
  }
  return out;
}

SpacingReport spacings_check(const SimResult& result, double rate) {
  if (result.config.k_order < 3) {
    throw InputError("spacings_check needs k_order >= 3");
  }
  std::vector<double> s1, s2;
  for (const auto& r : result.replicates) {
    s1.push_back(r.scaled[1] - r.scaled[0]);
    s2.push_back(r.scaled[2] - r.scaled[1]);
  }
  SpacingReport rep;
  rep.first = ks_exponential(s1, rate);
  rep.second = ks_exponential(s2, rate);
  rep.correlation = sample_correlation(s1, s2);
  rep.band = 3.0 / std::sqrt(static_cast<double>(s1.size()));
  return rep;
}

double disk_square_overlap(Point c, double eps) {
  if (!(eps > 0.0)) return 0.0;
  const double x0 = -c.x, x1 = 1.0 - c.x;
  const double y0 = -c.y, y1 = 1.0 - c.y;
  return disk_below(x1, y1, eps) - disk_below(x0, y1, eps) -
         disk_below(x1, y0, eps) + disk_below(x0, y0, eps);
}

NuEstimate nu_estimate(std::size_t samples, const RngStream& rng) {
  if (samples < 100000) throw InputError("nu_estimate needs >= 1e5 samples");
  NuEstimate out;
  for (int k = 1; k <= 10; ++k) out.eps.push_back(std::ldexp(1.0, -k));
  std::vector<double> sums(out.eps.size(), 0.0);
  RngStream st = rng;
  for (std::size_t s = 0; s < samples; ++s) {
    const Point x{st.uniform(), st.uniform()};
    for (std::size_t e = 0; e < out.eps.size(); ++e) {
      sums[e] += disk_square_overlap(x, out.eps[e]);
    }
  }
  for (std::size_t e = 0; e < out.eps.size(); ++e) {
    const double p = sums[e] / static_cast<double>(samples);
    out.ratios.push_back(p / (out.eps[e] * out.eps[e]));
    out.value = std::max(out.value, out.ratios.back());
  }
  return out;
}

}  // namespace tripois
