#include "ats/wavelet.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "ats/error.hpp"
#include "ats/shrinkage.hpp"
#include "wavelet_tables.hpp"

namespace ats {

namespace {

constexpr double kFilterTolerance = 1e-10;

std::string_view short_prefix(WaveletFamily family) {
  switch (family) {
    case WaveletFamily::coiflet: return "coif";
    case WaveletFamily::daubechies: return "db";
    case WaveletFamily::symlet: return "sym";
  }
  return "";
}

WaveletSpec from_scaling(WaveletFamily family, int order, std::span<const double> h) {
  WaveletSpec spec;
  spec.family = family;
  spec.order = order;
  const std::size_t len = h.size();
  spec.rec_lo.assign(h.begin(), h.end());
  spec.dec_lo.assign(h.rbegin(), h.rend());
  spec.rec_hi.resize(len);
  for (std::size_t i = 0; i < len; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    spec.rec_hi[i] = sign * h[len - 1 - i];
  }
  spec.dec_hi.assign(spec.rec_hi.rbegin(), spec.rec_hi.rend());
  return spec;
}

// One analysis step on an even-length band s.
void analyze(std::span<const double> s, const WaveletSpec& spec, std::vector<double>& approx,
             std::vector<double>& detail) {
  const std::size_t m = s.size();
  const std::size_t half = m / 2;
  const std::size_t len = spec.length();
  const double* h = spec.rec_lo.data();
  const double* g = spec.rec_hi.data();
  approx.assign(half, 0.0);
  detail.assign(half, 0.0);
  for (std::size_t k = 0; k < half; ++k) {
    const std::size_t base = 2 * k;
    double a = 0.0;
    double d = 0.0;
    if (base + len <= m) {
      const double* src = s.data() + base;
      for (std::size_t i = 0; i < len; ++i) {
        a += h[i] * src[i];
        d += g[i] * src[i];
      }
    } else {
      for (std::size_t i = 0; i < len; ++i) {
        const double v = s[(base + i) % m];
        a += h[i] * v;
        d += g[i] * v;
      }
    }
    approx[k] = a;
    detail[k] = d;
  }
}

// Transpose of analyze(): returns the even-length band of size 2 * approx.size().
std::vector<double> synthesize(std::span<const double> approx, std::span<const double> detail,
                               const WaveletSpec& spec) {
  const std::size_t half = approx.size();
  const std::size_t m = 2 * half;
  const std::size_t len = spec.length();
  const double* h = spec.rec_lo.data();
  const double* g = spec.rec_hi.data();
  std::vector<double> s(m, 0.0);
  for (std::size_t k = 0; k < half; ++k) {
    const std::size_t base = 2 * k;
    const double a = approx[k];
    const double d = detail[k];
    if (base + len <= m) {
      double* dst = s.data() + base;
      for (std::size_t i = 0; i < len; ++i) dst[i] += h[i] * a + g[i] * d;
    } else {
      for (std::size_t i = 0; i < len; ++i) s[(base + i) % m] += h[i] * a + g[i] * d;
    }
  }
  return s;
}

void check_structure(const WaveletDecomposition& d) {
  const auto fail = [](const std::string& why) {
    throw Error(ErrorKind::inconsistent_structure, "wavelet decomposition: " + why);
  };
  const std::size_t levels = d.details.size();
  if (levels == 0) fail("no detail levels");
  if (d.input_lengths.size() != levels) fail("input_lengths does not match level count");
  if (d.input_lengths.front() != d.original_length) fail("first level length differs from original");
  for (std::size_t j = 0; j < levels; ++j) {
    const std::size_t expect = (d.input_lengths[j] + 1) / 2;
    if (d.details[j].size() != expect) fail("detail band length inconsistent with decimation");
    if (j + 1 < levels && d.input_lengths[j + 1] != expect) fail("level lengths not dyadic");
  }
  if (d.approximation.size() != d.details.back().size()) fail("approximation length mismatch");
}

}  // namespace

std::string_view to_string(WaveletFamily family) {
  switch (family) {
    case WaveletFamily::coiflet: return "coiflet";
    case WaveletFamily::daubechies: return "daubechies";
    case WaveletFamily::symlet: return "symlet";
  }
  return "unknown";
}

std::string WaveletSpec::name() const {
  return std::string(short_prefix(family)) + std::to_string(order);
}

WaveletSpec build_wavelet(WaveletFamily family, int order) {
  for (const auto& entry : detail::scaling_filter_table()) {
    if (entry.family == family && entry.order == order) {
      return from_scaling(family, order, entry.scaling);
    }
  }
  throw Error(ErrorKind::capability, "unsupported wavelet: " + std::string(to_string(family)) +
                                         " order " + std::to_string(order));
}

WaveletSpec build_wavelet(std::string_view name) {
  for (auto family : {WaveletFamily::coiflet, WaveletFamily::daubechies, WaveletFamily::symlet}) {
    const auto prefix = short_prefix(family);
    if (name.size() <= prefix.size() || name.substr(0, prefix.size()) != prefix) continue;
    const auto digits = name.substr(prefix.size());
    int order = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), order);
    if (ec == std::errc() && ptr == digits.data() + digits.size()) return build_wavelet(family, order);
  }
  throw Error(ErrorKind::capability, "unsupported wavelet name: " + std::string(name));
}

std::vector<WaveletSpec> supported_wavelets() {
  std::vector<WaveletSpec> out;
  for (const auto& entry : detail::scaling_filter_table()) {
    out.push_back(from_scaling(entry.family, entry.order, entry.scaling));
  }
  return out;
}

double orthonormality_error(const WaveletSpec& spec) {
  const auto& h = spec.rec_lo;
  const std::size_t len = h.size();
  double worst = 0.0;
  double sum = 0.0;
  for (double v : h) sum += v;
  worst = std::max(worst, std::abs(sum - std::sqrt(2.0)));
  for (std::size_t shift = 0; shift < len; shift += 2) {
    double acc = 0.0;
    for (std::size_t i = 0; i + shift < len; ++i) acc += h[i] * h[i + shift];
    worst = std::max(worst, std::abs(acc - (shift == 0 ? 1.0 : 0.0)));
  }
  // dec_hi[n] = (-1)^(n+1) dec_lo[L-1-n]
  for (std::size_t i = 0; i < len; ++i) {
    const double sign = (i % 2 == 0) ? -1.0 : 1.0;
    worst = std::max(worst, std::abs(spec.dec_hi[i] - sign * spec.dec_lo[len - 1 - i]));
  }
  return worst;
}

int max_level(std::size_t n, const WaveletSpec& spec) {
  const std::size_t len = spec.length();
  if (n < len) {
    throw Error(ErrorKind::input_too_short, "series of length " + std::to_string(n) +
                                                " is shorter than the " + spec.name() + " filter (" +
                                                std::to_string(len) + " taps)");
  }
  if (len < 2) return 1;
  const double ratio = static_cast<double>(n) / static_cast<double>(len - 1);
  const int j = static_cast<int>(std::floor(std::log2(ratio)));
  return std::max(j, 1);
}

WaveletDecomposition dwt_forward(std::span<const double> x, const WaveletSpec& spec, int levels) {
  const int cap = max_level(x.size(), spec);
  if (levels < 1 || levels > cap) {
    throw Error(ErrorKind::invalid_argument, "decomposition level " + std::to_string(levels) +
                                                 " outside [1, " + std::to_string(cap) + "]");
  }
  WaveletDecomposition d;
  d.original_length = x.size();
  std::vector<double> band(x.begin(), x.end());
  std::vector<double> approx;
  std::vector<double> detail;
  for (int j = 0; j < levels; ++j) {
    d.input_lengths.push_back(band.size());
    if (band.size() % 2 != 0) band.push_back(band.back());
    analyze(band, spec, approx, detail);
    d.details.push_back(detail);
    band.swap(approx);
  }
  d.approximation = std::move(band);
  return d;
}

std::vector<double> dwt_inverse(const WaveletDecomposition& d, const WaveletSpec& spec) {
  check_structure(d);
  std::vector<double> band = d.approximation;
  for (std::size_t j = d.details.size(); j-- > 0;) {
    band = synthesize(band, d.details[j], spec);
    band.resize(d.input_lengths[j]);
  }
  return band;
}

DwtDenoiseOutput denoise_dwt(std::span<const double> x, const WaveletSpec& spec,
                             std::optional<int> levels) {
  const int depth = levels.value_or(max_level(x.size(), spec));
  WaveletDecomposition d = dwt_forward(x, spec, depth);

  ThresholdReport report;
  report.sigma = estimate_sigma(d.details.front());
  report.theta = universal_threshold(report.sigma, x.size());
  for (int j = 0; j < d.levels(); ++j) {
    soft_threshold_inplace(d.details[static_cast<std::size_t>(j)], report.theta);
    report.levels_thresholded.push_back(j + 1);
  }

  DwtDenoiseOutput out;
  out.result.method = Method::dwt;
  out.result.denoised = dwt_inverse(d, spec);
  out.result.residual = residual_of(x, out.result.denoised);
  out.result.sigmas = {report.sigma};
  out.result.thresholds = {report.theta};
  out.report = std::move(report);
  return out;
}

}  // namespace ats
