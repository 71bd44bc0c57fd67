#include "ats/error.hpp"

namespace ats {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::empty_input: return "empty input";
    case ErrorKind::input_too_short: return "input too short";
    case ErrorKind::invalid_argument: return "invalid argument";
    case ErrorKind::capability: return "unsupported capability";
    case ErrorKind::alignment: return "alignment error";
    case ErrorKind::inconsistent_structure: return "inconsistent structure";
    case ErrorKind::zero_energy: return "zero-energy reference";
    case ErrorKind::configuration: return "configuration error";
    case ErrorKind::io: return "i/o error";
  }
  return "unknown error";
}

}  // namespace ats
