#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace braidfield {

enum class ErrorKind {
  MalformedWord,
  IndexOutOfRange,
  TrivialNeedsStrands,
  InvalidArgument,
  EmptyData,
  DuplicateNode,
  SingularAlpha,
  SymmetryViolation,
  BoundaryCrossing,
  DegenerateCrossing,
  CancellationFailure,
  RootSolverFailure,
  IncreaseSamples,
  DeltaSearchFailure,
  VerificationFailure,
  IntegerizeFailure,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` tells callers which
/// pipeline stage rejected the input.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace braidfield
