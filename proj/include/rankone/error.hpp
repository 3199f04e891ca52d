#pragma once

#include <stdexcept>
#include <string>

namespace rankone {

enum class ErrorKind {
  ZeroPolynomial,
  ExactModeUnavailable,
  NotDivisible,
  SingularMatrix,
  SingularSimilarity,
  DimensionMismatch,
  LocatorOutOfRange,
  SpectrumCollision,
  DegenerateDenominator,
  RankOutOfRange,
  EigenvalueMismatch,
  ZeroVector,
  IncompleteSpectrum,
  ParseError,
  DivisionByZero,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::ExactModeUnavailable: return "ExactModeUnavailable";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::SingularSimilarity: return "SingularSimilarity";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::LocatorOutOfRange: return "LocatorOutOfRange";
    case ErrorKind::SpectrumCollision: return "SpectrumCollision";
    case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorKind::RankOutOfRange: return "RankOutOfRange";
    case ErrorKind::EigenvalueMismatch: return "EigenvalueMismatch";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::IncompleteSpectrum: return "IncompleteSpectrum";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
  }
  return "Unknown";
}

/// Base of every exception thrown by the library. `kind()` is stable and
/// suitable for dispatch; `what()` is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// A recurrence hit a zero denominator. Carries the target rank at which it
/// happened and a printable form of the offending value.
class DegenerateDenominator : public Error {
 public:
  DegenerateDenominator(std::string formula, int rank, std::string value)
      : Error(ErrorKind::DegenerateDenominator,
              formula + " vanishes at rank " + std::to_string(rank) + " (value " + value + ")"),
        formula_(std::move(formula)),
        rank_(rank),
        value_(std::move(value)) {}

  const std::string& formula() const noexcept { return formula_; }
  int rank() const noexcept { return rank_; }
  const std::string& value() const noexcept { return value_; }

 private:
  std::string formula_;
  int rank_;
  std::string value_;
};

/// Malformed input; `field()` names the offending JSON path.
class ParseError : public Error {
 public:
  ParseError(std::string field, const std::string& message)
      : Error(ErrorKind::ParseError, field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace rankone
