#include "ats/denoise_result.hpp"

#include <algorithm>

#include "ats/error.hpp"

namespace ats {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::ma: return "ma";
    case Method::dwt: return "dwt";
    case Method::hht: return "hht";
  }
  return "unknown";
}

std::optional<Method> method_from_string(std::string_view name) {
  if (name == "ma") return Method::ma;
  if (name == "dwt") return Method::dwt;
  if (name == "hht") return Method::hht;
  return std::nullopt;
}

std::vector<double> residual_of(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorKind::alignment, "residual operands differ in length");
  std::vector<double> eps(x.size());
  std::transform(x.begin(), x.end(), y.begin(), eps.begin(), [](double a, double b) { return a - b; });
  return eps;
}

}  // namespace ats
