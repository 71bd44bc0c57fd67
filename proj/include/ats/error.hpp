#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ats {

enum class ErrorKind {
  empty_input,
  input_too_short,
  invalid_argument,
  capability,
  alignment,
  inconsistent_structure,
  zero_energy,
  configuration,
  io,
};

std::string_view to_string(ErrorKind kind);

// All library failures are reported through this one exception type; the kind
// lets callers (the pipeline, mostly) decide between aborting and skipping.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ats
