#include "spheresep/config.hpp"

#include <sstream>

namespace spheresep {

std::string format_number(double value) {
  std::ostringstream out;
  out << value;
  return out.str();
}

void ToleranceConfig::validate() const {
  if (!(unit_tol > 0) || !(margin_tol > 0) || !(lp_tol > 0) || !(offset_tol > 0)) {
    throw Error(ErrorCode::InvalidArgument, "tolerances must be strictly positive");
  }
  if (max_iter < 1) {
    throw Error(ErrorCode::InvalidArgument, "max_iter must be at least 1");
  }
}

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::OutsideOpenHemisphere: return "OutsideOpenHemisphere";
    case ErrorCode::NotHemispherical: return "NotHemispherical";
    case ErrorCode::DuplicateGenerator: return "DuplicateGenerator";
    case ErrorCode::NegativeEpsilon: return "NegativeEpsilon";
    case ErrorCode::DeltaOutOfRange: return "DeltaOutOfRange";
    case ErrorCode::IterationLimit: return "IterationLimit";
    case ErrorCode::NumericallyAmbiguous: return "NumericallyAmbiguous";
    case ErrorCode::EpsilonSearchFailed: return "EpsilonSearchFailed";
    case ErrorCode::ContractionStalled: return "ContractionStalled";
    case ErrorCode::WitnessInvalid: return "WitnessInvalid";
    case ErrorCode::GenerationFailed: return "GenerationFailed";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace spheresep
