#pragma once

#include <exception>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace braidfield::cli {

enum ExitCode : int {
  kSuccess = 0,
  kStageError = 1,
  kInputError = 2,
  kVerificationFailure = 3,
  kProjectionFailure = 4,
};

struct Config {
  double tol = 1e-9;
  int grid = 4096;
  std::size_t samples = 512;
  std::optional<double> lambda;
  int repeat = 1;
};

/// Throws InvalidArgument unless tol is in (0, 1e-3], samples >= 64 and
/// repeat >= 1.
void validate(const Config& config);

/// Exit code for an exception escaping a command.
int exit_code(const std::exception& e) noexcept;

/// Runs one invocation; args excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace braidfield::cli
