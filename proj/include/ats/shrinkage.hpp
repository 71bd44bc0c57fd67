#pragma once

#include <span>
#include <vector>

namespace ats {

// Gaussian consistency constant: MAD / 0.6745 estimates sigma.
inline constexpr double kMadToSigma = 0.6745;

// Median with the even-length convention: mean of the two central order
// statistics. Throws on empty input.
double median(std::span<const double> values);

// med{|v - med{v}|}
double median_absolute_deviation(std::span<const double> values);

// sigma = MAD / 0.6745. Needs at least two values.
double estimate_sigma(std::span<const double> coefficients);

// Donoho-Johnstone universal threshold sigma * sqrt(2 ln n).
double universal_threshold(double sigma, std::size_t n);

double soft_threshold(double c, double theta);
std::vector<double> soft_threshold(std::span<const double> c, double theta);
void soft_threshold_inplace(std::span<double> c, double theta);

}  // namespace ats
