#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ats/denoise_result.hpp"

namespace ats {

enum class WaveletFamily { coiflet, daubechies, symlet };

std::string_view to_string(WaveletFamily family);

// Orthonormal two-channel filter bank. Naming follows the usual toolbox
// convention: rec_lo is the scaling filter h, dec_lo its time reverse,
// rec_hi[n] = (-1)^n h[L-1-n] and dec_hi the reverse of rec_hi.
struct WaveletSpec {
  WaveletFamily family = WaveletFamily::coiflet;
  int order = 5;
  std::vector<double> dec_lo;
  std::vector<double> dec_hi;
  std::vector<double> rec_lo;
  std::vector<double> rec_hi;

  std::size_t length() const noexcept { return rec_lo.size(); }
  // Short toolbox-style name, e.g. "coif5", "db4", "sym8".
  std::string name() const;
};

// Shipped tables: coiflet 1-5, daubechies 1-10, symlet 2-10.
WaveletSpec build_wavelet(WaveletFamily family, int order);
// Accepts the short names produced by WaveletSpec::name().
WaveletSpec build_wavelet(std::string_view name);
std::vector<WaveletSpec> supported_wavelets();

// Largest deviation from the orthonormality conditions on the scaling filter:
// |sum h - sqrt 2|, |sum h^2 - 1|, |sum h[n] h[n+2k]| for k != 0, and the QMF
// relation between the low- and high-pass filters.
double orthonormality_error(const WaveletSpec& spec);

// floor(log2(n / (L - 1))), at least 1. Throws when n < L.
int max_level(std::size_t n, const WaveletSpec& spec);

enum class BoundaryMode { periodic };

// Mallat pyramid with periodic extension. An odd-length band is extended by
// repeating its last sample before decimation, so band j has
// ceil(input_lengths[j-1] / 2) coefficients.
struct WaveletDecomposition {
  std::vector<std::vector<double>> details;  // details[0] is level j = 1 (finest)
  std::vector<double> approximation;         // level J
  std::vector<std::size_t> input_lengths;    // length entering each level
  std::size_t original_length = 0;
  BoundaryMode boundary_mode = BoundaryMode::periodic;

  int levels() const noexcept { return static_cast<int>(details.size()); }
};

WaveletDecomposition dwt_forward(std::span<const double> x, const WaveletSpec& spec, int levels);
std::vector<double> dwt_inverse(const WaveletDecomposition& d, const WaveletSpec& spec);

struct ThresholdReport {
  double sigma = 0.0;
  double theta = 0.0;
  std::vector<int> levels_thresholded;
};

struct DwtDenoiseOutput {
  DenoiseResult result;
  ThresholdReport report;
};

// Single universal threshold from the finest detail band, soft-applied to
// every detail band; the approximation band passes through untouched.
// `levels` defaults to max_level.
DwtDenoiseOutput denoise_dwt(std::span<const double> x, const WaveletSpec& spec,
                             std::optional<int> levels = std::nullopt);

}  // namespace ats
