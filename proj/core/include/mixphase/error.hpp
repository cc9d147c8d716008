#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mixphase {

enum class ErrorCode {
  NotHermitian,
  NoConvergence,
  NotPositive,
  ShapeMismatch,
  BadSpectrum,
  BadBasis,
  BadPairing,
  Degenerate,
  ZeroOverlapStep,
  AntipodalEndpoints,
  NotQuasiOrthogonal,
  BasisMismatch,
  MultipleCycles,
  RangeError,
  InsufficientSamples,
  InvalidArgument,
  ResidualContract,
};

std::string_view to_string(ErrorCode code) noexcept;

// True for failures of a numerical contract (as opposed to bad input).
bool is_numeric_failure(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mixphase
