#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nvsim {

enum class ErrorKind {
  NoRoot,
  SingularSystem,
  StepTooLarge,
  QuadratureUnderflow,
  NoPeak,
  NoCrossing,
  DegenerateData,
  ParseError,
  UnknownKey,
  InvariantViolation,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NoRoot: return "NoRoot";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::QuadratureUnderflow: return "QuadratureUnderflow";
    case ErrorKind::NoPeak: return "NoPeak";
    case ErrorKind::NoCrossing: return "NoCrossing";
    case ErrorKind::DegenerateData: return "DegenerateData";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownKey: return "UnknownKey";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

/// Configuration errors map to CLI exit status 2, everything else to 3.
constexpr bool is_config_error(ErrorKind kind) {
  return kind == ErrorKind::ParseError || kind == ErrorKind::UnknownKey ||
         kind == ErrorKind::InvariantViolation;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool condition, const std::string& field,
                    const std::string& message) {
  if (!condition) fail(ErrorKind::InvariantViolation, field + ": " + message);
}

}  // namespace nvsim
