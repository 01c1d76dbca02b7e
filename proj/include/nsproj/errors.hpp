#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nsproj {

enum class ErrorKind {
  DivisionByZero,
  NotRealPositive,
  IrrationalRoot,
  UnlimitedNumber,
  ZeroArgument,
  NotStandard,
  EvaluationError,
  NotRemovable,
  ZeroVector,
  DimensionMismatch,
  DegeneratePair,
  UnsupportedArity,
  ZeroMatrix,
  SingularMatrix,
  ComplexModeUnsupported,
  RealModeUnsupported,
  DegenerateCrossRatio,
  DegenerateFivePoints,
  MalformedNumber,
  SyntaxError,
  UnknownIdentifier,
  Redefinition,
  TypeError,
  DependencyFailed,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NotRealPositive: return "NotRealPositive";
    case ErrorKind::IrrationalRoot: return "IrrationalRoot";
    case ErrorKind::UnlimitedNumber: return "UnlimitedNumber";
    case ErrorKind::ZeroArgument: return "ZeroArgument";
    case ErrorKind::NotStandard: return "NotStandard";
    case ErrorKind::EvaluationError: return "EvaluationError";
    case ErrorKind::NotRemovable: return "NotRemovable";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DegeneratePair: return "DegeneratePair";
    case ErrorKind::UnsupportedArity: return "UnsupportedArity";
    case ErrorKind::ZeroMatrix: return "ZeroMatrix";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::ComplexModeUnsupported: return "ComplexModeUnsupported";
    case ErrorKind::RealModeUnsupported: return "RealModeUnsupported";
    case ErrorKind::DegenerateCrossRatio: return "DegenerateCrossRatio";
    case ErrorKind::DegenerateFivePoints: return "DegenerateFivePoints";
    case ErrorKind::MalformedNumber: return "MalformedNumber";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorKind::Redefinition: return "Redefinition";
    case ErrorKind::TypeError: return "TypeError";
    case ErrorKind::DependencyFailed: return "DependencyFailed";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a kind so callers (and the
/// interpreter's reports) can branch on it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), detail_(message) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  [[nodiscard]] const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace nsproj
