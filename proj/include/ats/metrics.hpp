#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ats/denoiser.hpp"

namespace ats {

// Percentage root-mean-square difference, 100 * sqrt(sum (x - y)^2 / sum x^2).
double prd(std::span<const double> x, std::span<const double> y_hat);

// Sample standard deviation (divisor N - 1).
double residual_sigma(std::span<const double> epsilon);

struct MetricsReport {
  Method method = Method::ma;
  double prd = 0.0;             // percent
  double residual_sigma = 0.0;  // kelvin
  std::size_t n_samples = 0;
  double elapsed = 0.0;  // seconds; median over timed repetitions
  std::string config;
};

MetricsReport make_report(std::span<const double> x, const DenoiseResult& r, const MethodConfig& cfg,
                          double elapsed);

// Runs the methods one after another on the same input. Each method gets one
// untimed warm-up call followed by `repetitions` timed calls; elapsed is the
// median. Metrics come from the warm-up output.
std::vector<MetricsReport> run_benchmark(std::span<const MethodConfig> methods,
                                         std::span<const double> signal, int repetitions = 5);

struct ComparisonRow {
  Method method = Method::ma;
  double clean_sigma = 0.0;
  double perturbed_sigma = 0.0;
  double ratio = 0.0;  // perturbed / clean
  bool flagged = false;
};

struct ReferenceComparison {
  std::vector<ComparisonRow> rows;

  // Tab-separated table: method, clean sigma, perturbed sigma, ratio, flag.
  std::string render() const;
};

inline constexpr double kDefaultFlagRatio = 1.5;

// A method is flagged when its residual sigma on perturbed data exceeds its
// sigma on clean data by more than (flag_ratio - 1) relative. Methods missing
// from either map produce no row.
ReferenceComparison compare_against_reference(const std::map<Method, double>& clean,
                                              const std::map<Method, double>& perturbed,
                                              double flag_ratio = kDefaultFlagRatio);

}  // namespace ats
