#pragma once

#include <stdexcept>
#include <string>

namespace spheresep {

/// Numerical tolerances shared by every query.
///
/// unit_tol    norm slack for unit vectors and frames.
/// margin_tol  threshold that stands in for the strict inequalities P.Q > 0.
/// lp_tol      phase-1 infeasibility cutoff and the zero band of LP optima.
/// offset_tol  target magnitude for the hyperplane offset in the contraction loop.
/// max_iter    cap on epsilon halvings and on contraction rounds.
struct ToleranceConfig {
  double unit_tol = 1e-12;
  double margin_tol = 1e-9;
  double lp_tol = 1e-10;
  double offset_tol = 1e-6;
  int max_iter = 200;

  /// Throws InvalidArgument unless all tolerances are positive and max_iter >= 1.
  void validate() const;
};

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  ZeroVector,
  OutsideOpenHemisphere,
  NotHemispherical,
  DuplicateGenerator,
  NegativeEpsilon,
  DeltaOutOfRange,
  IterationLimit,
  NumericallyAmbiguous,
  EpsilonSearchFailed,
  ContractionStalled,
  WitnessInvalid,
  GenerationFailed,
  UnsupportedDimension,
  MalformedInput,
};

const char* to_string(ErrorCode code);

/// Shortest round-trippable-looking form for diagnostics (%g style).
std::string format_number(double value);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace spheresep
