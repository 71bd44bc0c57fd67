#pragma once

#include <span>

#include "ats/wavelet.hpp"

namespace ats::detail {

struct ScalingFilterEntry {
  WaveletFamily family;
  int order;
  std::span<const double> scaling;  // h[n], sum == sqrt(2)
};

std::span<const ScalingFilterEntry> scaling_filter_table();

}  // namespace ats::detail
