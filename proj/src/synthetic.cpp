#include "ats/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ats/error.hpp"

namespace ats {

SyntheticSignal make_synthetic(const SyntheticSpec& spec) {
  if (spec.n == 0) throw Error(ErrorKind::empty_input, "synthetic signal needs n > 0");
  if (spec.steps > 0 && spec.n <= 2 * spec.step_margin * (spec.steps + 1)) {
    throw Error(ErrorKind::invalid_argument, "too many steps for the signal length");
  }
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, spec.noise_sigma);

  SyntheticSignal s;
  const double phase = 2.0 * std::numbers::pi * unit(rng);

  // Rejection-sample step positions so they keep their margin.
  while (s.step_positions.size() < spec.steps) {
    const auto lo = spec.step_margin;
    const auto hi = spec.n - spec.step_margin;
    const auto p = lo + static_cast<std::size_t>(unit(rng) * static_cast<double>(hi - lo));
    const bool clear = std::all_of(s.step_positions.begin(), s.step_positions.end(), [&](std::size_t q) {
      return (p > q ? p - q : q - p) >= spec.step_margin;
    });
    if (clear) s.step_positions.push_back(p);
  }
  std::sort(s.step_positions.begin(), s.step_positions.end());
  std::vector<double> heights;
  for (std::size_t k = 0; k < spec.steps; ++k) {
    const double h = spec.step_min + (spec.step_max - spec.step_min) * unit(rng);
    heights.push_back(unit(rng) < 0.5 ? -h : h);
  }

  s.clean.resize(spec.n);
  s.noisy.resize(spec.n);
  double level = 0.0;
  std::size_t next = 0;
  for (std::size_t i = 0; i < spec.n; ++i) {
    while (next < s.step_positions.size() && s.step_positions[next] == i) level += heights[next++];
    s.clean[i] = spec.mean + spec.amplitude * std::sin(2.0 * std::numbers::pi * static_cast<double>(i) / spec.period + phase) + level;
  }
  for (std::size_t i = 0; i < spec.n; ++i) s.noisy[i] = s.clean[i] + (spec.noise_sigma > 0.0 ? noise(rng) : 0.0);
  return s;
}

}  // namespace ats
