#include "ness/error.hpp"

namespace ness {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonPositiveCoupling: return "NonPositiveCoupling";
    case ErrorCode::NonPositiveFrequency: return "NonPositiveFrequency";
    case ErrorCode::ZeroFrequency: return "ZeroFrequency";
    case ErrorCode::DegenerateTransition: return "DegenerateTransition";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::UnsupportedInitialState: return "UnsupportedInitialState";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::WrongBasis: return "WrongBasis";
    case ErrorCode::NotXState: return "NotXState";
    case ErrorCode::StepSizeUnderflow: return "StepSizeUnderflow";
    case ErrorCode::NonUniqueKernel: return "NonUniqueKernel";
    case ErrorCode::InvalidState: return "InvalidState";
  }
  return "Unknown";
}

}  // namespace ness
