#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tvcm {

enum class ErrorKind {
  Schema,
  Parse,
  EmptyData,
  InvalidArgument,
  DegenerateDomain,
  NonIncreasingKnots,
  DimensionMismatch,
  InsufficientData,
  SingularDesign,
  BootstrapDegeneracy,
  Numerical,
  NoFeasibleConfiguration,
  InfeasibleFold,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Every library failure is reported through this type; `kind()` is stable
/// and is what the CLI serializes into its error JSON.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tvcm
