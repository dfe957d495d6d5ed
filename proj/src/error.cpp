#include "coprime/error.hpp"

namespace coprime {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NoSideLobe: return "NoSideLobe";
    case ErrorCode::NotEnoughPeaks: return "NotEnoughPeaks";
    case ErrorCode::UnsupportedRegime: return "UnsupportedRegime";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::NumericMismatch: return "NumericMismatch";
  }
  return "Unknown";
}

}  // namespace coprime
