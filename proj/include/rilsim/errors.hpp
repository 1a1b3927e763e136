#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rilsim {

enum class ErrorCode {
  ScenarioInvalid,
  InvalidPolicy,
  NotInBase,
  NoCourts,
  NoCommunities,
  EmptyPlan,
  InvalidInput,
  Io,
};

/// One validation finding, addressed by a JSON-pointer-style path.
struct Diagnostic {
  std::string pointer;
  std::string message;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  Error(ErrorCode code, std::string message, std::vector<Diagnostic> diagnostics)
      : std::runtime_error(std::move(message)),
        code_(code),
        diagnostics_(std::move(diagnostics)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  ErrorCode code_;
  std::vector<Diagnostic> diagnostics_;
};

}  // namespace rilsim
