#include "ats/emd.hpp"

#include <algorithm>
#include <cmath>

#include "ats/error.hpp"
#include "ats/shrinkage.hpp"

namespace ats {

namespace {

constexpr double kMinHalfSpread = 1e-12;
constexpr std::size_t kMirroredKnots = 2;
constexpr std::size_t kMinEmdLength = 8;

// Natural cubic spline through strictly increasing knots, evaluated at
// 0, 1, ..., out.size()-1. Scratch vectors are reused across calls.
class SplineEvaluator {
 public:
  void evaluate(std::span<const double> kx, std::span<const double> ky, std::span<double> out) {
    const std::size_t k = kx.size();
    if (k == 2) {
      const double slope = (ky[1] - ky[0]) / (kx[1] - kx[0]);
      for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = ky[0] + slope * (static_cast<double>(i) - kx[0]);
      }
      return;
    }
    solve_second_derivatives(kx, ky);

    // Per interval: y = ky[s] + u (b + u (c + u d)), u = t - kx[s].
    std::size_t seg = 0;
    std::size_t i = 0;
    const std::size_t n = out.size();
    while (i < n) {
      const double t = static_cast<double>(i);
      while (seg + 2 < k && t > kx[seg + 1]) ++seg;
      const double hs = h_[seg];
      const double a = ky[seg];
      const double b = (ky[seg + 1] - ky[seg]) / hs - hs * (2.0 * m_[seg] + m_[seg + 1]) / 6.0;
      const double c = 0.5 * m_[seg];
      const double d = (m_[seg + 1] - m_[seg]) / (6.0 * hs);
      const double x0 = kx[seg];
      // last sample index covered by this interval
      const double stop = (seg + 2 < k) ? kx[seg + 1] : static_cast<double>(n - 1);
      for (; i < n && static_cast<double>(i) <= stop; ++i) {
        const double u = static_cast<double>(i) - x0;
        out[i] = a + u * (b + u * (c + u * d));
      }
    }
  }

 private:
  // m_[0] = m_[k-1] = 0; tridiagonal system on the interior knots solved with
  // the Thomas algorithm.
  void solve_second_derivatives(std::span<const double> kx, std::span<const double> ky) {
    const std::size_t k = kx.size();
    h_.resize(k - 1);
    for (std::size_t i = 0; i + 1 < k; ++i) h_[i] = kx[i + 1] - kx[i];
    const std::size_t interior = k - 2;
    diag_.resize(interior);
    rhs_.resize(interior);
    for (std::size_t r = 0; r < interior; ++r) {
      const std::size_t i = r + 1;
      diag_[r] = 2.0 * (h_[i - 1] + h_[i]);
      rhs_[r] = 6.0 * ((ky[i + 1] - ky[i]) / h_[i] - (ky[i] - ky[i - 1]) / h_[i - 1]);
    }
    // row r: h[r] m[r] + diag[r] m[r+1] + h[r+1] m[r+2] = rhs[r]
    for (std::size_t r = 1; r < interior; ++r) {
      const double w = h_[r] / diag_[r - 1];
      diag_[r] -= w * h_[r];
      rhs_[r] -= w * rhs_[r - 1];
    }
    m_.assign(k, 0.0);
    for (std::size_t r = interior; r-- > 0;) {
      m_[r + 1] = (rhs_[r] - h_[r + 1] * m_[r + 2]) / diag_[r];
    }
  }

  std::vector<double> h_, diag_, rhs_, m_;
};

// Knots for one envelope: the extrema themselves plus the two nearest extrema
// mirrored across each end sample. Mirrored knots that would coincide with an
// end sample are dropped.
void envelope_knots(std::span<const double> x, std::span<const std::size_t> indices,
                    std::vector<double>& kx, std::vector<double>& ky) {
  const std::size_t n = x.size();
  const double last = static_cast<double>(n - 1);
  kx.clear();
  ky.clear();
  const std::size_t left = std::min(kMirroredKnots, indices.size());
  for (std::size_t r = left; r-- > 0;) {
    if (indices[r] == 0) continue;
    kx.push_back(-static_cast<double>(indices[r]));
    ky.push_back(x[indices[r]]);
  }
  for (std::size_t idx : indices) {
    if (idx >= n) throw Error(ErrorKind::invalid_argument, "extremum index out of range");
    kx.push_back(static_cast<double>(idx));
    ky.push_back(x[idx]);
  }
  const std::size_t right = std::min(kMirroredKnots, indices.size());
  for (std::size_t r = 0; r < right; ++r) {
    const std::size_t idx = indices[indices.size() - 1 - r];
    if (idx == n - 1) continue;
    kx.push_back(2.0 * last - static_cast<double>(idx));
    ky.push_back(x[idx]);
  }
  if (kx.size() < 2) throw Error(ErrorKind::input_too_short, "envelope needs at least two knots");
}

void find_extrema_into(std::span<const double> x, Extrema& ext) {
  const std::size_t n = x.size();
  ext.maxima.clear();
  ext.minima.clear();
  std::size_t i = 1;
  while (i + 1 < n) {
    if (x[i] == x[i - 1]) {  // plateau touching the left end
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && x[j + 1] == x[i]) ++j;
    if (j + 1 >= n) break;  // plateau touching the right end
    const bool rose = x[i] > x[i - 1];
    const bool falls = x[j + 1] < x[j];
    if (rose && falls) ext.maxima.push_back((i + j) / 2);
    if (!rose && !falls) ext.minima.push_back((i + j) / 2);
    i = j + 1;
  }
}

// Buffers for one sifting run; every iteration reuses them.
class Sifter {
 public:
  explicit Sifter(const SiftConfig& cfg) : cfg_(cfg) {}

  std::optional<SiftResult> run(std::span<const double> x) {
    if (x.size() < 3) return std::nullopt;
    const std::size_t n = x.size();
    upper_.resize(n);
    lower_.resize(n);
    SiftResult out;
    out.imf.assign(x.begin(), x.end());
    while (true) {
      find_extrema_into(out.imf, ext_);
      if (ext_.count() < 3) break;
      envelope_knots(out.imf, ext_.maxima, kx_, ky_);
      spline_.evaluate(kx_, ky_, upper_);
      envelope_knots(out.imf, ext_.minima, kx_, ky_);
      spline_.evaluate(kx_, ky_, lower_);
      const bool converged = subtract_mean(out.imf);
      ++out.iterations;
      if (converged) break;
      if (out.iterations >= cfg_.max_siftings) {
        out.hit_iteration_cap = true;
        break;
      }
    }
    if (out.iterations == 0) return std::nullopt;
    return out;
  }

 private:
  // h -= (upper + lower) / 2, returning whether the stop rule held for the
  // envelopes of the h that came in.
  bool subtract_mean(std::span<double> h) {
    std::size_t evaluated = 0;
    std::size_t above_theta1 = 0;
    bool above_theta2 = false;
    for (std::size_t i = 0; i < h.size(); ++i) {
      const double mean = 0.5 * (upper_[i] + lower_[i]);
      const double spread = 0.5 * (upper_[i] - lower_[i]);
      h[i] -= mean;
      if (std::abs(spread) < kMinHalfSpread) continue;
      const double e = std::abs(mean / spread);
      ++evaluated;
      above_theta1 += !(e < cfg_.theta1);
      above_theta2 |= !(e < cfg_.theta2);
    }
    return !above_theta2 &&
           static_cast<double>(above_theta1) <= cfg_.alpha * static_cast<double>(evaluated);
  }

  SiftConfig cfg_;
  Extrema ext_;
  std::vector<double> kx_, ky_, upper_, lower_;
  SplineEvaluator spline_;
};

}  // namespace

void validate(const SiftConfig& cfg) {
  if (!(cfg.theta1 > 0.0 && cfg.theta1 < cfg.theta2)) {
    throw Error(ErrorKind::invalid_argument, "sifting thresholds need 0 < theta1 < theta2");
  }
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
    throw Error(ErrorKind::invalid_argument, "sifting tolerance alpha must lie in (0, 1)");
  }
  if (cfg.max_siftings < 1 || cfg.max_imfs < 1) {
    throw Error(ErrorKind::invalid_argument, "sifting and mode limits must be positive");
  }
}

Extrema find_extrema(std::span<const double> x) {
  if (x.size() < 3) throw Error(ErrorKind::input_too_short, "extrema search needs at least 3 samples");
  Extrema ext;
  find_extrema_into(x, ext);
  return ext;
}

std::size_t zero_crossings(std::span<const double> x) {
  std::size_t count = 0;
  int last = 0;
  for (double v : x) {
    const int s = (v > 0.0) - (v < 0.0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

std::vector<double> envelope(std::span<const double> x, std::span<const std::size_t> indices) {
  if (indices.empty()) throw Error(ErrorKind::input_too_short, "envelope needs at least one extremum");
  std::vector<double> kx;
  std::vector<double> ky;
  envelope_knots(x, indices, kx, ky);
  std::vector<double> out(x.size());
  SplineEvaluator spline;
  spline.evaluate(kx, ky, out);
  return out;
}

std::optional<SiftResult> sift(std::span<const double> x, const SiftConfig& cfg) {
  validate(cfg);
  return Sifter(cfg).run(x);
}

EmdDecomposition emd(std::span<const double> x, const SiftConfig& cfg) {
  validate(cfg);
  if (x.size() < kMinEmdLength) {
    throw Error(ErrorKind::input_too_short, "EMD needs at least 8 samples");
  }
  EmdDecomposition d;
  d.residual.assign(x.begin(), x.end());
  Sifter sifter(cfg);
  while (d.imfs.size() < static_cast<std::size_t>(cfg.max_imfs)) {
    auto s = sifter.run(d.residual);
    if (!s) break;
    for (std::size_t i = 0; i < d.residual.size(); ++i) d.residual[i] -= s->imf[i];
    const std::size_t mode = d.imfs.size() + 1;
    if (s->hit_iteration_cap) {
      d.warnings.push_back("mode " + std::to_string(mode) + ": sifting stopped at the " +
                           std::to_string(cfg.max_siftings) + "-iteration cap");
    }
    const Extrema ext = find_extrema(s->imf);
    const auto crossings = zero_crossings(s->imf);
    const auto extrema = ext.count();
    if ((extrema > crossings ? extrema - crossings : crossings - extrema) > 1) {
      d.warnings.push_back("mode " + std::to_string(mode) + ": " + std::to_string(extrema) +
                           " extrema vs " + std::to_string(crossings) + " zero crossings");
    }
    d.sift_counts.push_back(s->iterations);
    d.imfs.push_back(std::move(s->imf));
  }
  if (d.imfs.size() == static_cast<std::size_t>(cfg.max_imfs) && find_extrema(d.residual).count() >= 3) {
    d.warnings.push_back("decomposition stopped at the " + std::to_string(cfg.max_imfs) +
                         "-mode cap; residual is not monotonic");
  }
  return d;
}

double cmse(std::span<const double> mode) {
  if (mode.empty()) throw Error(ErrorKind::empty_input, "CMSE of an empty mode");
  double acc = 0.0;
  for (double v : mode) acc += v * v;
  return acc / static_cast<double>(mode.size());
}

CmseSelection select_index(const EmdDecomposition& d) {
  CmseSelection sel;
  const std::size_t modes = d.mode_count();
  if (modes < 2) {
    sel.j = modes;
    sel.warning = "only " + std::to_string(modes) + " mode(s); thresholding all of them";
    return sel;
  }
  for (std::size_t k = 0; k + 1 < modes; ++k) sel.per_mode_cmse.push_back(cmse(d.imfs[k]));
  const auto best = std::min_element(sel.per_mode_cmse.begin(), sel.per_mode_cmse.end());
  sel.j = static_cast<std::size_t>(best - sel.per_mode_cmse.begin()) + 1;
  return sel;
}

HhtDenoiseOutput denoise_hht(std::span<const double> x, const SiftConfig& cfg) {
  HhtDenoiseOutput out;
  out.decomposition = emd(x, cfg);
  out.selection = select_index(out.decomposition);
  const auto& d = out.decomposition;

  out.modes = d.imfs;
  for (std::size_t m = 0; m < out.selection.j; ++m) {
    ThresholdReport rep;
    rep.sigma = estimate_sigma(d.imfs[m]);
    rep.theta = universal_threshold(rep.sigma, x.size());
    rep.levels_thresholded = {static_cast<int>(m + 1)};
    soft_threshold_inplace(out.modes[m], rep.theta);
    out.result.sigmas.push_back(rep.sigma);
    out.result.thresholds.push_back(rep.theta);
    out.level_reports.push_back(std::move(rep));
  }

  std::vector<double> y(x.size(), 0.0);
  for (const auto& mode : out.modes) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += mode[i];
  }
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += d.residual[i];

  out.result.method = Method::hht;
  out.result.residual = residual_of(x, y);
  out.result.denoised = std::move(y);
  out.result.warnings = d.warnings;
  if (out.selection.warning) out.result.warnings.push_back(*out.selection.warning);
  return out;
}

}  // namespace ats
