#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ats/denoise_result.hpp"
#include "ats/wavelet.hpp"

namespace ats {

// Tri-threshold sifting stop rule. With the envelope mean m(n) and the
// half-spread a(n) = (upper - lower) / 2, let e(n) = |m(n) / a(n)|. Sifting
// stops once e < theta1 on at least (1 - alpha) of the samples and e < theta2
// on all of them. Samples with a(n) < 1e-12 are left out of the test.
struct SiftConfig {
  double theta1 = 0.05;
  double theta2 = 0.5;
  double alpha = 0.05;
  int max_siftings = 1000;
  int max_imfs = 32;
};

void validate(const SiftConfig& cfg);

struct Extrema {
  std::vector<std::size_t> maxima;
  std::vector<std::size_t> minima;

  std::size_t count() const noexcept { return maxima.size() + minima.size(); }
};

// Strict interior extrema. A plateau counts once, at its midpoint rounded down,
// and only if the values on both sides are on the same side of it.
Extrema find_extrema(std::span<const double> x);

// Sign changes of x, zeros skipped.
std::size_t zero_crossings(std::span<const double> x);

// Natural cubic spline through (i, x[i]) for the given indices, with the two
// extrema nearest each end mirrored across that end, evaluated at 0..N-1.
std::vector<double> envelope(std::span<const double> x, std::span<const std::size_t> indices);

struct SiftResult {
  std::vector<double> imf;
  int iterations = 0;
  bool hit_iteration_cap = false;
};

// nullopt when x has fewer than three extrema: nothing left to extract.
std::optional<SiftResult> sift(std::span<const double> x, const SiftConfig& cfg = {});

struct EmdDecomposition {
  std::vector<std::vector<double>> imfs;  // imfs[0] is mode 1 (finest)
  std::vector<double> residual;
  std::vector<int> sift_counts;
  std::vector<std::string> warnings;

  std::size_t mode_count() const noexcept { return imfs.size(); }
};

EmdDecomposition emd(std::span<const double> x, const SiftConfig& cfg = {});

// Mean square of one mode: the distance between two consecutive partial
// reconstructions.
double cmse(std::span<const double> mode);

struct CmseSelection {
  std::vector<double> per_mode_cmse;  // entry k-1 belongs to mode k, k = 1..M-1
  std::size_t j = 0;                  // 1-based; modes 1..j get thresholded
  std::optional<std::string> warning;
};

// argmin over k = 1..M-1 of cmse(c_k), smallest k on ties. With fewer than two
// modes the selection degenerates to j = M.
CmseSelection select_index(const EmdDecomposition& d);

struct HhtDenoiseOutput {
  DenoiseResult result;
  std::vector<ThresholdReport> level_reports;  // one per thresholded mode
  CmseSelection selection;
  EmdDecomposition decomposition;
  // Modes as summed into the output: thresholded for m <= j, untouched above.
  std::vector<std::vector<double>> modes;
};

HhtDenoiseOutput denoise_hht(std::span<const double> x, const SiftConfig& cfg = {});

}  // namespace ats
