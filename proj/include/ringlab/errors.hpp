#pragma once

#include <stdexcept>
#include <string>

namespace ringlab {

enum class ErrorKind {
  AssociativityViolation,
  UnitViolation,
  OrderIncompatibility,
  ParseError,
  NotIrreducible,
  NotTwoSidedIdeal,
  NotASubmodule,
  DifferentBaseRings,
  SizeCutoffExceeded,
  EnumerationCutoffExceeded,
  TopDecompositionFailure,
  IterationGuardExceeded,
  InternalCheckFailed,
  UnknownSuite,
  IoError,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::AssociativityViolation: return "AssociativityViolation";
    case ErrorKind::UnitViolation: return "UnitViolation";
    case ErrorKind::OrderIncompatibility: return "OrderIncompatibility";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NotIrreducible: return "NotIrreducible";
    case ErrorKind::NotTwoSidedIdeal: return "NotTwoSidedIdeal";
    case ErrorKind::NotASubmodule: return "NotASubmodule";
    case ErrorKind::DifferentBaseRings: return "DifferentBaseRings";
    case ErrorKind::SizeCutoffExceeded: return "SizeCutoffExceeded";
    case ErrorKind::EnumerationCutoffExceeded: return "EnumerationCutoffExceeded";
    case ErrorKind::TopDecompositionFailure: return "TopDecompositionFailure";
    case ErrorKind::IterationGuardExceeded: return "IterationGuardExceeded";
    case ErrorKind::InternalCheckFailed: return "InternalCheckFailed";
    case ErrorKind::UnknownSuite: return "UnknownSuite";
    case ErrorKind::IoError: return "IoError";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

// Internal consistency assertion: used for postconditions that are theorems,
// not user-input validation. Tripping one means a bug, never bad input.
inline void check(bool ok, const std::string& msg) {
  if (!ok) fail(ErrorKind::InternalCheckFailed, msg);
}

}  // namespace ringlab
