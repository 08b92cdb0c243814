#pragma once

#include <cstdint>
#include <vector>

#include "tripois/measures.hpp"
#include "tripois/rng.hpp"
#include "tripois/statistics.hpp"

namespace tripois {

struct SimConfig {
  Measure measure = Measure::uniform(Region::rectangle({0, 0}, 1, 1));
  std::size_t n = 3;
  std::size_t replicates = 1;
  std::vector<double> alphas;  // strictly increasing, positive
  std::size_t k_order = 1;     // order statistics recorded per replicate
  std::uint64_t seed = 0;
};

// Throws InputError describing the first invalid field.
void validate(const SimConfig& cfg);

struct ReplicateRecord {
  std::vector<double> scaled;         // n^3 * Delta_i, i = 1..k_order
  std::vector<std::uint64_t> counts;  // T^n(alpha) per alpha
  double diameter = 0.0;              // longest side of the Delta_1 triangle
};

struct SimResult {
  SimConfig config;
  std::vector<ReplicateRecord> replicates;

  std::vector<double> scaled(std::size_t order) const;  // 0-based order
  std::vector<std::uint64_t> counts(std::size_t alpha_index) const;
  std::vector<double> diameters() const;
};

// Replicate r draws its n points from RngStream(seed, r). The result is a
// deterministic function of cfg, whatever the thread count.
SimResult run_simulation(const SimConfig& cfg, int threads = 0);

struct AlphaSummary {
  double alpha = 0.0;
  Estimate mean_count;
  double tv_to_poisson = 0.0;  // against Po(mean_count)
  double limit_mean = 0.0;     // kappa * alpha
};

struct SimSummary {
  double kappa = 0.0;  // rate of the limiting exponential law
  Estimate mean_delta1;
  Estimate second_moment_delta1;
  double implied_kappa = 0.0;  // 1 / mean_delta1
  KsResult ks;                 // n^3 Delta_1 against Exp(kappa)
  std::vector<AlphaSummary> per_alpha;
  double median_diameter = 0.0;
};

SimSummary summarize(const SimResult& result, double kappa);

enum class PiMethod {
  // Exact conditional strip probabilities given (X, Y) and (X, U).
  kConditional,
  // Plain indicator events on the 5-point draw.
  kIndicator,
};

struct PiEstimates {
  double beta = 0.0;
  Estimate pi;
  Estimate pi1;
  Estimate pi2;
  std::size_t samples = 0;
};

// Probability that one triangle, two triangles sharing a vertex, and two
// triangles sharing a side all have area <= beta. Every sample draws the
// five points U, V, X, Y, Z and evaluates all three estimators on that draw.
PiEstimates estimate_pi(const Measure& m, double beta, std::size_t samples,
                        const RngStream& rng,
                        PiMethod method = PiMethod::kConditional,
                        int threads = 0);

// Expected number of triangles with area <= alpha n^-3: C(n,3) pi(alpha n^-3).
Estimate lambda_n(const Measure& m, std::size_t n, double alpha,
                  std::size_t samples, const RngStream& rng,
                  PiMethod method = PiMethod::kConditional, int threads = 0);

// Total-variation bound ((1 - e^-lambda) / (2 lambda)) n^5 pi2.
double chen_stein_bound(std::size_t n, double alpha, const Estimate& pi2,
                        double lambda);

struct TailEntry {
  double alpha = 0.0;
  double survival = 0.0;     // empirical P(n^3 Delta_1 > alpha)
  double survival_se = 0.0;  // binomial standard error
  double lambda = 0.0;
  double pi2 = 0.0;
  double m_n = 0.0;          // max{4 lambda, 6 n^5 pi2}
  double bound = 1.0;        // exp(-lambda^2 / m_n)
  bool violated = false;     // survival > bound + 3 se
};

struct TailReport {
  std::vector<TailEntry> entries;
  bool ok() const;
};

TailReport tail_bound_check(const SimResult& result, const Measure& m,
                            std::size_t n, const std::vector<double>& alphas,
                            std::size_t samples, const RngStream& rng,
                            int threads = 0);

struct MomentEntry {
  int p = 1;
  Estimate sample;  // mean of (n^3 Delta_1)^p
  double expected = 0.0;  // p! / rate^p
  bool within = false;    // |sample - expected| <= 3 se
};

std::vector<MomentEntry> moment_check(const SimResult& result, double rate,
                                      int p_max);

struct SpacingReport {
  KsResult first;   // n^3 (Delta_2 - Delta_1) against Exp(rate)
  KsResult second;  // n^3 (Delta_3 - Delta_2)
  double correlation = 0.0;
  double band = 0.0;  // 3 / sqrt(replicates)
  bool uncorrelated() const { return std::abs(correlation) <= band; }
};

SpacingReport spacings_check(const SimResult& result, double rate);

// Area of the disk of radius eps about c intersected with the unit square.
double disk_square_overlap(Point c, double eps);

struct NuEstimate {
  double value = 0.0;  // max over the eps grid of P(|X - Y| <= eps) / eps^2
  std::vector<double> eps;
  std::vector<double> ratios;
};

// Unit square, eps in {2^-1, ..., 2^-10}. Each sample draws X and uses the
// exact conditional probability P(|X - Y| <= eps | X).
NuEstimate nu_estimate(std::size_t samples, const RngStream& rng);

}  // namespace tripois
