#include "statefiber/error.hpp"

namespace statefiber {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Syntax: return "SYNTAX";
    case ErrorCode::ArcCount: return "ARC_COUNT";
    case ErrorCode::Disconnected: return "DISCONNECTED";
    case ErrorCode::MalformedRotation: return "MALFORMED_ROTATION";
    case ErrorCode::NonSpherical: return "NON_SPHERICAL";
    case ErrorCode::NonBipartite: return "NON_BIPARTITE";
    case ErrorCode::InconsistentOrientation: return "INCONSISTENT_ORIENTATION";
    case ErrorCode::StateLength: return "STATE_LENGTH";
    case ErrorCode::Unsigned: return "UNSIGNED";
    case ErrorCode::HasCutVertex: return "HAS_CUT_VERTEX";
    case ErrorCode::PathNotClosed: return "PATH_NOT_CLOSED";
    case ErrorCode::NonSquare: return "NON_SQUARE";
    case ErrorCode::OddCycle: return "ODD_CYCLE";
    case ErrorCode::Parity: return "PARITY";
    case ErrorCode::TooFewStrands: return "TOO_FEW_STRANDS";
    case ErrorCode::Unreduced: return "UNREDUCED";
    case ErrorCode::InvalidContinuedFraction: return "INVALID_CF";
    case ErrorCode::InternalMismatch: return "INTERNAL_MISMATCH";
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
  }
  return "UNKNOWN";
}

}  // namespace statefiber
