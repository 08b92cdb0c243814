#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "tripois/geometry.hpp"
#include "tripois/measures.hpp"
#include "tripois/rng.hpp"
#include "tripois/statistics.hpp"

namespace tripois {

enum class KappaMethod { kQuadrature, kMonteCarlo, kClosedForm };

std::string to_string(KappaMethod method);

// Intensity of the limiting Poisson process of scaled smallest areas.
struct KappaEstimate {
  double value = 0.0;
  double standard_error = 0.0;  // zero for quadrature and closed form
  KappaMethod method = KappaMethod::kQuadrature;
  std::uint64_t redraws = 0;    // coincident pairs redrawn (Monte Carlo)
};

// (2/3) * integral over lines of marginal^3, by nested adaptive quadrature
// with relative target tol. Throws NonConvergence.
KappaEstimate kappa_quadrature(const Measure& m, double tol);

// (2/3) * E[marginal(line through X, Y) / |X - Y|] over `samples` pairs.
// Blocks of pairs draw from rng.substream(block), so the result does not
// depend on `threads`.
KappaEstimate kappa_monte_carlo(const Measure& m, std::size_t samples,
                                const RngStream& rng, int threads = 0);

// 2/|S| for the uniform law on a convex polygon or disk; 1/(3 sqrt(3|V|))
// for a Gaussian; nothing otherwise.
std::optional<KappaEstimate> kappa_closed_form(const Measure& m);

// Closed form when available, quadrature otherwise.
KappaEstimate kappa_best(const Measure& m, double tol = 1e-10);

// Integral over all lines of chord_length^p.
double crofton_integral(const Region& s, double p, double tol);

// E[chord(line through X, Y) / |X - Y|] for X, Y uniform on s.
Estimate mean_chord_ratio(const Region& s, std::size_t samples,
                          const RngStream& rng, int threads = 0);

// E[1/|X - Y|] as the integral over lines of marginal^2. Throws
// InvariantViolation if the result exceeds pi * marginal_bound(m).
double inv_distance_moment(const Measure& m, double tol);

// kappa * sqrt(det V). Throws InputError("degenerate measure") for a singular
// covariance and InvariantViolation if the value is below 1/(6 pi).
double affine_invariant(const Measure& m, double tol = 1e-10);

// Lower bound 1/(6 pi) on the affine invariant.
double affine_invariant_lower_bound();

}  // namespace tripois
