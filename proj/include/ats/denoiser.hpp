#pragma once

#include <optional>
#include <span>
#include <string>

#include "ats/denoise_result.hpp"
#include "ats/emd.hpp"
#include "ats/ma_filter.hpp"

namespace ats {

// One selected method plus the parameters of every method; only the block
// matching `method` is consulted.
struct MethodConfig {
  Method method = Method::dwt;
  MaConfig ma;
  std::string wavelet = "coif5";
  std::optional<int> levels;  // nullopt: maximum level for the input length
  SiftConfig sift;
};

void validate(const MethodConfig& cfg);

// Compact parameter echo, e.g. "dwt wavelet=coif5 levels=auto".
std::string describe(const MethodConfig& cfg);

DenoiseResult denoise(std::span<const double> x, const MethodConfig& cfg);

}  // namespace ats
