#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ness {

enum class ErrorCode {
  InvalidArgument,
  NonPositiveCoupling,
  NonPositiveFrequency,
  ZeroFrequency,
  DegenerateTransition,
  DegenerateSpectrum,
  UnsupportedInitialState,
  NotSymmetric,
  WrongBasis,
  NotXState,
  StepSizeUnderflow,
  NonUniqueKernel,
  InvalidState,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this type; callers switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  // Failures caused by a zero or coincident Bohr frequency.
  bool is_degenerate_physics() const noexcept {
    return code_ == ErrorCode::ZeroFrequency || code_ == ErrorCode::DegenerateTransition ||
           code_ == ErrorCode::DegenerateSpectrum;
  }

 private:
  ErrorCode code_;
};

}  // namespace ness
