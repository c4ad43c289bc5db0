#include "flatsphere/error.hpp"

namespace flatsphere {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Domain: return "domain";
    case ErrorCode::UnsupportedDimension: return "unsupported-dimension";
    case ErrorCode::Overflow: return "overflow";
    case ErrorCode::RankDeficient: return "rank-deficient";
    case ErrorCode::NotPositiveDefinite: return "not-positive-definite";
    case ErrorCode::VerificationFailed: return "verification-failed";
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::InsufficientData: return "insufficient-data";
    case ErrorCode::ResourceLimit: return "resource-limit";
    case ErrorCode::Config: return "config";
    case ErrorCode::Io: return "io";
    case ErrorCode::Format: return "format";
    case ErrorCode::IndexOutOfRange: return "index-out-of-range";
    case ErrorCode::Eigensolver: return "eigensolver";
  }
  return "unknown";
}

}  // namespace flatsphere
