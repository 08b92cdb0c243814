#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace tripois {

// A value with its standard error.
struct Estimate {
  double value = 0.0;
  double se = 0.0;
};

// Welford accumulator; merge() combines partial results (Chan et al.), so a
// fixed merge order gives a result independent of thread scheduling.
class RunningStats {
 public:
  void add(double x);
  void merge(const RunningStats& other);

  std::size_t count() const { return count_; }
  double mean() const { return mean_; }
  double variance() const;  // sample variance, n - 1 denominator
  double standard_error() const;
  Estimate estimate() const { return {mean(), standard_error()}; }

 private:
  std::size_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

struct KsResult {
  double d = 0.0;
  double p_approx = 1.0;
};

// One-sample Kolmogorov-Smirnov statistic against Exp(rate).
KsResult ks_exponential(std::span<const double> samples, double rate);
// Two-term asymptotic Kolmogorov tail 2(e^{-2x^2} - e^{-8x^2}) with the
// usual finite-sample correction x = (sqrt(m) + 0.12 + 0.11/sqrt(m)) d,
// clamped to [0, 1]. Below x = 1 the theta-function series is used instead.
double kolmogorov_p_value(double d, std::size_t m);

double poisson_pmf(std::uint64_t k, double lambda);
// Half the L1 distance between the empirical pmf of `counts` and
// Po(lambda), with the Poisson mass beyond the largest count included.
double tv_to_poisson(std::span<const std::uint64_t> counts, double lambda);

double sample_correlation(std::span<const double> a, std::span<const double> b);
double median(std::vector<double> values);

// Least-squares slope of y against x.
double fitted_slope(std::span<const double> x, std::span<const double> y);

}  // namespace tripois
