#pragma once

#include <filesystem>
#include <span>
#include <string>

namespace ats {

// Writes a standalone SVG with two stacked panels: raw and denoised traces on
// top, the residual below, and a legend naming all three. Long series are
// reduced to per-column min/max pairs. Returns false (and writes nothing) for
// empty input.
bool emit_plot(std::span<const double> x, std::span<const double> y, std::span<const double> epsilon,
               const std::filesystem::path& path, const std::string& title = {});

}  // namespace ats
