#include "tripois/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numbers>
#include <thread>

#include "tripois/error.hpp"
#include "tripois/parallel.hpp"

namespace tripois {

namespace {
constexpr double kPi = std::numbers::pi;
}  // namespace

int default_threads() {
  if (const char* env = std::getenv("TRIPOIS_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void RunningStats::add(double x) {
  ++count_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (x - mean_);
}

void RunningStats::merge(const RunningStats& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double n1 = static_cast<double>(count_);
  const double n2 = static_cast<double>(other.count_);
  const double delta = other.mean_ - mean_;
  const double n = n1 + n2;
  mean_ += delta * n2 / n;
  m2_ += other.m2_ + delta * delta * n1 * n2 / n;
  count_ += other.count_;
}

double RunningStats::variance() const {
  return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
}

double RunningStats::standard_error() const {
  return count_ > 0 ? std::sqrt(variance() / static_cast<double>(count_)) : 0.0;
}

KsResult ks_exponential(std::span<const double> samples, double rate) {
  if (!(rate > 0.0)) throw InputError("rate must be positive");
  if (samples.empty()) throw InputError("no samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double m = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double cdf = sorted[i] <= 0.0 ? 0.0 : -std::expm1(-rate * sorted[i]);
    const double above = static_cast<double>(i + 1) / m - cdf;
    const double below = cdf - static_cast<double>(i) / m;
    d = std::max({d, above, below});
  }
  return {d, kolmogorov_p_value(d, sorted.size())};
}

double kolmogorov_p_value(double d, std::size_t m) {
  const double root = std::sqrt(static_cast<double>(m));
  const double x = (root + 0.12 + 0.11 / root) * d;
  if (x < 1.0) {
    // The alternating series is poor here; use the theta-function form of
    // the Kolmogorov CDF, which converges fast for small x.
    if (x < 0.2) return 1.0;
    double cdf = 0.0;
    for (int k = 1; k <= 5; ++k) {
      const double odd = 2.0 * k - 1.0;
      cdf += std::exp(-odd * odd * kPi * kPi / (8.0 * x * x));
    }
    return std::clamp(1.0 - std::sqrt(2.0 * kPi) / x * cdf, 0.0, 1.0);
  }
  const double p = 2.0 * (std::exp(-2.0 * x * x) - std::exp(-8.0 * x * x));
  return std::clamp(p, 0.0, 1.0);
}

double poisson_pmf(std::uint64_t k, double lambda) {
  if (lambda == 0.0) return k == 0 ? 1.0 : 0.0;
  const double kd = static_cast<double>(k);
  return std::exp(kd * std::log(lambda) - lambda - std::lgamma(kd + 1.0));
}

double tv_to_poisson(std::span<const std::uint64_t> counts, double lambda) {
  if (!(lambda >= 0.0)) throw InputError("lambda must be non-negative");
  if (counts.empty()) throw InputError("no counts");
  std::map<std::uint64_t, std::size_t> freq;
  std::uint64_t top = 0;
  for (std::uint64_t c : counts) {
    ++freq[c];
    top = std::max(top, c);
  }
  const double m = static_cast<double>(counts.size());
  double l1 = 0.0;
  double covered = 0.0;
  for (std::uint64_t j = 0; j <= top; ++j) {
    const double pj = poisson_pmf(j, lambda);
    covered += pj;
    const auto it = freq.find(j);
    const double fj = it == freq.end() ? 0.0 : static_cast<double>(it->second) / m;
    l1 += std::abs(fj - pj);
  }
  l1 += std::max(0.0, 1.0 - covered);
  return std::clamp(0.5 * l1, 0.0, 1.0);
}

double sample_correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw InputError("correlation needs two equal-length samples");
  }
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

double median(std::vector<double> values) {
  if (values.empty()) throw InputError("median of empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double fitted_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InputError("slope needs at least two points");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace tripois
