#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace statefiber {

enum class ErrorCode {
  Syntax,
  ArcCount,
  Disconnected,
  MalformedRotation,
  NonSpherical,
  NonBipartite,
  InconsistentOrientation,
  StateLength,
  Unsigned,
  HasCutVertex,
  PathNotClosed,
  NonSquare,
  OddCycle,
  Parity,
  TooFewStrands,
  Unreduced,
  InvalidContinuedFraction,
  InternalMismatch,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception carrying a machine-readable error code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace statefiber
