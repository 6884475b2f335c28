#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lvs {

enum class ErrorKind {
  InvalidArgument,
  VariableMismatch,
  DivisionByZeroSeries,
  UnsupportedFunction,
  NotEvenSeries,
  UnknownPreset,
  CoefficientSingular,
  SingularTime,
  DegeneratePadeTable,
  NearPole,
  IterateOverflow,
  NotAutonomous,
  DomainError,
  NoReference,
};

[[nodiscard]] constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::VariableMismatch: return "VariableMismatch";
    case ErrorKind::DivisionByZeroSeries: return "DivisionByZeroSeries";
    case ErrorKind::UnsupportedFunction: return "UnsupportedFunction";
    case ErrorKind::NotEvenSeries: return "NotEvenSeries";
    case ErrorKind::UnknownPreset: return "UnknownPreset";
    case ErrorKind::CoefficientSingular: return "CoefficientSingular";
    case ErrorKind::SingularTime: return "SingularTime";
    case ErrorKind::DegeneratePadeTable: return "DegeneratePadeTable";
    case ErrorKind::NearPole: return "NearPole";
    case ErrorKind::IterateOverflow: return "IterateOverflow";
    case ErrorKind::NotAutonomous: return "NotAutonomous";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NoReference: return "NoReference";
  }
  return "Unknown";
}

/// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace lvs
