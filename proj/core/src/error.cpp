#include "braidfield/error.hpp"

namespace braidfield {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::MalformedWord: return "MalformedWord";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::TrivialNeedsStrands: return "TrivialNeedsStrands";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::EmptyData: return "EmptyData";
    case ErrorKind::DuplicateNode: return "DuplicateNode";
    case ErrorKind::SingularAlpha: return "SingularAlpha";
    case ErrorKind::SymmetryViolation: return "SymmetryViolation";
    case ErrorKind::BoundaryCrossing: return "BoundaryCrossing";
    case ErrorKind::DegenerateCrossing: return "DegenerateCrossing";
    case ErrorKind::CancellationFailure: return "CancellationFailure";
    case ErrorKind::RootSolverFailure: return "RootSolverFailure";
    case ErrorKind::IncreaseSamples: return "IncreaseSamples";
    case ErrorKind::DeltaSearchFailure: return "DeltaSearchFailure";
    case ErrorKind::VerificationFailure: return "VerificationFailure";
    case ErrorKind::IntegerizeFailure: return "IntegerizeFailure";
  }
  return "Unknown";
}

}  // namespace braidfield
