#include "ats/denoiser.hpp"

#include <sstream>

#include "ats/error.hpp"
#include "ats/wavelet.hpp"

namespace ats {

void validate(const MethodConfig& cfg) {
  switch (cfg.method) {
    case Method::ma:
      validate(cfg.ma);
      break;
    case Method::dwt:
      build_wavelet(cfg.wavelet);
      if (cfg.levels && *cfg.levels < 1) {
        throw Error(ErrorKind::invalid_argument, "wavelet levels must be >= 1");
      }
      break;
    case Method::hht:
      validate(cfg.sift);
      break;
  }
}

std::string describe(const MethodConfig& cfg) {
  std::ostringstream os;
  os << to_string(cfg.method);
  switch (cfg.method) {
    case Method::ma:
      os << " span=" << cfg.ma.span << " mode=" << to_string(cfg.ma.mode);
      break;
    case Method::dwt:
      os << " wavelet=" << cfg.wavelet << " levels=";
      if (cfg.levels) {
        os << *cfg.levels;
      } else {
        os << "auto";
      }
      break;
    case Method::hht:
      os << " theta1=" << cfg.sift.theta1 << " theta2=" << cfg.sift.theta2
         << " alpha=" << cfg.sift.alpha << " max_siftings=" << cfg.sift.max_siftings
         << " max_imfs=" << cfg.sift.max_imfs;
      break;
  }
  return os.str();
}

DenoiseResult denoise(std::span<const double> x, const MethodConfig& cfg) {
  switch (cfg.method) {
    case Method::ma:
      return moving_average(x, cfg.ma);
    case Method::dwt:
      return denoise_dwt(x, build_wavelet(cfg.wavelet), cfg.levels).result;
    case Method::hht:
      return denoise_hht(x, cfg.sift).result;
  }
  throw Error(ErrorKind::invalid_argument, "unknown method");
}

}  // namespace ats
