#include "ats/ma_filter.hpp"

#include <algorithm>
#include <cstddef>

#include "ats/error.hpp"

namespace ats {

namespace {

// Whole-sample reflection about index 0 (x[-i] = x[i]), folded for inputs
// shorter than the kernel.
std::size_t reflect_index(std::ptrdiff_t i, std::size_t n) {
  if (n == 1) return 0;
  const auto period = static_cast<std::ptrdiff_t>(2 * (n - 1));
  i %= period;
  if (i < 0) i += period;
  if (i >= static_cast<std::ptrdiff_t>(n)) i = period - i;
  return static_cast<std::size_t>(i);
}

}  // namespace

std::string_view to_string(MaMode mode) {
  return mode == MaMode::causal ? "causal" : "centered";
}

std::optional<MaMode> ma_mode_from_string(std::string_view name) {
  if (name == "causal") return MaMode::causal;
  if (name == "centered") return MaMode::centered;
  return std::nullopt;
}

void validate(const MaConfig& cfg) {
  if (cfg.span < 1) throw Error(ErrorKind::invalid_argument, "moving-average span must be >= 1");
  if (cfg.mode == MaMode::centered && cfg.span % 2 == 0) {
    throw Error(ErrorKind::invalid_argument, "centered moving average needs an odd span");
  }
}

DenoiseResult moving_average(std::span<const double> x, const MaConfig& cfg) {
  validate(cfg);
  if (x.empty()) throw Error(ErrorKind::empty_input, "moving average of an empty series");

  const std::size_t n = x.size();
  const auto span = static_cast<std::ptrdiff_t>(cfg.span);
  std::vector<double> y(n);

  if (cfg.mode == MaMode::causal) {
    const double w = 1.0 / static_cast<double>(cfg.span);
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::ptrdiff_t k = 0; k < span; ++k) {
        acc += x[reflect_index(static_cast<std::ptrdiff_t>(i) - k, n)];
      }
      y[i] = acc * w;
    }
  } else {
    const std::size_t half = static_cast<std::size_t>(cfg.span / 2);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t h = std::min({half, i, n - 1 - i});
      double acc = 0.0;
      for (std::size_t k = i - h; k <= i + h; ++k) acc += x[k];
      y[i] = acc / static_cast<double>(2 * h + 1);
    }
  }

  DenoiseResult r;
  r.method = Method::ma;
  r.residual = residual_of(x, y);
  r.denoised = std::move(y);
  return r;
}

}  // namespace ats
