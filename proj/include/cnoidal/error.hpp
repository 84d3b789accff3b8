#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cnoidal {

enum class ErrorKind {
  InvalidModulus,
  DivergentPeriod,
  NoBracket,
  NotMonotone,
  InvalidArgument,
  InfeasibleFraction,
  SchemeMismatch,
  DegenerateModulus,
  DegenerateScheme,
  InvalidRatio,
  OrderingViolation,
  UnitOccupancy,
  PulseLimit,
  NoSolution,
  UndefinedRatio,
  Uncertified,
  UnstableRun,
  Usage,
  Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so
/// front ends can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidModulus: return "InvalidModulus";
    case ErrorKind::DivergentPeriod: return "DivergentPeriod";
    case ErrorKind::NoBracket: return "NoBracket";
    case ErrorKind::NotMonotone: return "NotMonotone";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InfeasibleFraction: return "InfeasibleFraction";
    case ErrorKind::SchemeMismatch: return "SchemeMismatch";
    case ErrorKind::DegenerateModulus: return "DegenerateModulus";
    case ErrorKind::DegenerateScheme: return "DegenerateScheme";
    case ErrorKind::InvalidRatio: return "InvalidRatio";
    case ErrorKind::OrderingViolation: return "OrderingViolation";
    case ErrorKind::UnitOccupancy: return "UnitOccupancy";
    case ErrorKind::PulseLimit: return "PulseLimit";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::UndefinedRatio: return "UndefinedRatio";
    case ErrorKind::Uncertified: return "Uncertified";
    case ErrorKind::UnstableRun: return "UnstableRun";
    case ErrorKind::Usage: return "UsageError";
    case ErrorKind::Io: return "IoError";
  }
  return "Unknown";
}

}  // namespace cnoidal
