#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace germinv {

enum class ErrorKind {
  SyntaxError,
  UnknownVariable,
  NegativeExponent,
  BothZero,
  ZeroInput,
  PrecisionExceeded,
  UnitGerm,
  NonVanishingGerm,
  TruncationTooSmall,
  IndeterminateSign,
  CertificationInconclusive,
  PathCountUnstable,
};

std::string_view error_kind_name(ErrorKind kind);

/// Single exception type for the library; `kind()` selects the outcome class.
class GermError : public std::runtime_error {
 public:
  GermError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind), detail_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

/// Parse failures carry the byte offset into the input text.
class ParseError : public GermError {
 public:
  ParseError(ErrorKind kind, std::size_t offset, const std::string& what)
      : GermError(kind, what + " at byte " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

inline std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::NegativeExponent: return "NegativeExponent";
    case ErrorKind::BothZero: return "BothZero";
    case ErrorKind::ZeroInput: return "ZeroInput";
    case ErrorKind::PrecisionExceeded: return "PrecisionExceeded";
    case ErrorKind::UnitGerm: return "UnitGerm";
    case ErrorKind::NonVanishingGerm: return "NonVanishingGerm";
    case ErrorKind::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorKind::IndeterminateSign: return "IndeterminateSign";
    case ErrorKind::CertificationInconclusive: return "CertificationInconclusive";
    case ErrorKind::PathCountUnstable: return "PathCountUnstable";
  }
  return "UnknownError";
}

}  // namespace germinv
