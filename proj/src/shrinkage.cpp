#include "ats/shrinkage.hpp"

#include <algorithm>
#include <cmath>

#include "ats/error.hpp"

namespace ats {

namespace {

double median_inplace(std::vector<double>& v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  double med = v[mid];
  if (v.size() % 2 == 0) {
    // lower central value is the largest of the left partition
    const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    med = 0.5 * (lower + med);
  }
  return med;
}

void check_theta(double theta) {
  if (!(theta >= 0.0)) throw Error(ErrorKind::invalid_argument, "threshold must be non-negative");
}

}  // namespace

double median(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorKind::empty_input, "median of an empty array");
  std::vector<double> v(values.begin(), values.end());
  return median_inplace(v);
}

double median_absolute_deviation(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorKind::empty_input, "MAD of an empty array");
  std::vector<double> v(values.begin(), values.end());
  const double med = median_inplace(v);
  for (double& x : v) x = std::abs(x - med);
  return median_inplace(v);
}

double estimate_sigma(std::span<const double> coefficients) {
  if (coefficients.size() < 2) {
    throw Error(ErrorKind::input_too_short, "noise estimate needs at least two coefficients");
  }
  return median_absolute_deviation(coefficients) / kMadToSigma;
}

double universal_threshold(double sigma, std::size_t n) {
  if (n < 2) throw Error(ErrorKind::input_too_short, "universal threshold needs n >= 2");
  if (!(sigma >= 0.0)) throw Error(ErrorKind::invalid_argument, "sigma must be non-negative");
  return sigma * std::sqrt(2.0 * std::log(static_cast<double>(n)));
}

double soft_threshold(double c, double theta) {
  check_theta(theta);
  if (c >= theta) return c - theta;
  if (c <= -theta) return c + theta;
  return 0.0;
}

void soft_threshold_inplace(std::span<double> c, double theta) {
  check_theta(theta);
  for (double& v : c) {
    if (v >= theta) {
      v -= theta;
    } else if (v <= -theta) {
      v += theta;
    } else {
      v = 0.0;
    }
  }
}

std::vector<double> soft_threshold(std::span<const double> c, double theta) {
  std::vector<double> out(c.begin(), c.end());
  soft_threshold_inplace(out, theta);
  return out;
}

}  // namespace ats
