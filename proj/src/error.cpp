#include "hypmoments/error.hpp"

namespace hypmoments {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::CompositeInput: return "CompositeInput";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::ModulusMismatch: return "ModulusMismatch";
    case ErrorCode::PrecisionLoss: return "PrecisionLoss";
    case ErrorCode::BoundaryLambda: return "BoundaryLambda";
    case ErrorCode::UnknownFamily: return "UnknownFamily";
    case ErrorCode::SingularFamily: return "SingularFamily";
    case ErrorCode::BadPrime: return "BadPrime";
    case ErrorCode::SweepMismatch: return "SweepMismatch";
    case ErrorCode::BadRange: return "BadRange";
    case ErrorCode::EmptySamples: return "EmptySamples";
    case ErrorCode::NonIntegral: return "NonIntegral";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::CheckFailure: return "CheckFailure";
    case ErrorCode::CacheCorrupt: return "CacheCorrupt";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace hypmoments
