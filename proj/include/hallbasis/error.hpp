#pragma once

#include <stdexcept>
#include <string>

namespace hallbasis {

enum class ErrorKind {
  NonIntegralCartan,
  DimensionMismatch,
  UnknownType,
  NotFiniteType,
  CycleDetected,
  UnsupportedFieldSize,
  SizeLimitExceeded,
  CertificationFailed,
  LayerOrderViolation,
  NonLaurentConstant,
  EliminationFailed,
  NonLaurentEntry,
  NoSolution,
  IdentityFailed,
  CorruptCache,
  ParseError,
};

const char* error_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonIntegralCartan: return "NonIntegralCartan";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::UnknownType: return "UnknownType";
    case ErrorKind::NotFiniteType: return "NotFiniteType";
    case ErrorKind::CycleDetected: return "CycleDetected";
    case ErrorKind::UnsupportedFieldSize: return "UnsupportedFieldSize";
    case ErrorKind::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorKind::CertificationFailed: return "CertificationFailed";
    case ErrorKind::LayerOrderViolation: return "LayerOrderViolation";
    case ErrorKind::NonLaurentConstant: return "NonLaurentConstant";
    case ErrorKind::EliminationFailed: return "EliminationFailed";
    case ErrorKind::NonLaurentEntry: return "NonLaurentEntry";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::IdentityFailed: return "IdentityFailed";
    case ErrorKind::CorruptCache: return "CorruptCache";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Error";
}

}  // namespace hallbasis
