#pragma once

#include <span>
#include <string_view>
#include <optional>

#include "ats/denoise_result.hpp"

namespace ats {

enum class MaMode {
  // FIR kernel h[n] = 1/span over x[n], x[n-1], ..., x[n-span+1];
  // delays the output by (span-1)/2 samples. Left edge is reflected.
  causal,
  // Zero-phase window; near the edges the half-width shrinks to the distance
  // from the nearer end, so y[0] = x[0] and y[N-1] = x[N-1].
  centered,
};

std::string_view to_string(MaMode mode);
std::optional<MaMode> ma_mode_from_string(std::string_view name);

struct MaConfig {
  int span = 9;
  MaMode mode = MaMode::centered;
};

void validate(const MaConfig& cfg);

DenoiseResult moving_average(std::span<const double> x, const MaConfig& cfg = {});

}  // namespace ats
