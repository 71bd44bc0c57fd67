#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ats {

// Diurnal-shaped test signal in kelvin: a slow sinusoid plus optional level
// shifts plus white Gaussian noise. Used by the bench command and the tests.
struct SyntheticSpec {
  std::size_t n = 86400;
  double mean = 210.0;
  double amplitude = 30.0;
  double period = 88775.0;  // samples per sol at 1 Hz
  std::size_t steps = 0;
  double step_min = 0.5;
  double step_max = 2.0;
  std::size_t step_margin = 64;  // minimum distance of a step from an end or another step
  double noise_sigma = 0.08;
  std::uint64_t seed = 1;
};

struct SyntheticSignal {
  std::vector<double> clean;
  std::vector<double> noisy;
  std::vector<std::size_t> step_positions;  // first sample after each shift, ascending
};

SyntheticSignal make_synthetic(const SyntheticSpec& spec);

}  // namespace ats
