#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tripois/geometry.hpp"

namespace tripois::svg {

// Points (x, rate * exp(-rate * x)) on [0, x_max], `points` of them.
std::vector<Point> exp_density_curve(double rate, double x_max, std::size_t points);

// Histogram of samples (density scale) with the Exp(rate) density overlaid.
std::string histogram(const std::vector<double>& samples, double rate);

// Sorted samples against Exp(rate) quantiles, with the diagonal and a
// 95% Dvoretzky-Kiefer-Wolfowitz band.
std::string qq(const std::vector<double>& samples, double rate);

// Empirical pmf of counts next to the Poisson(lambda) pmf.
std::string counts(const std::vector<std::uint64_t>& counts, double lambda);

}  // namespace tripois::svg
