#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ats {

enum class Method { ma, dwt, hht };

std::string_view to_string(Method method);
std::optional<Method> method_from_string(std::string_view name);

// Output of any denoiser: y and eps = x - y, plus whatever noise estimates and
// thresholds the method produced (empty for the moving average).
struct DenoiseResult {
  Method method = Method::ma;
  std::vector<double> denoised;
  std::vector<double> residual;
  std::vector<double> sigmas;
  std::vector<double> thresholds;
  std::vector<std::string> warnings;
};

// eps[n] = x[n] - y[n]
std::vector<double> residual_of(std::span<const double> x, std::span<const double> y);

}  // namespace ats
