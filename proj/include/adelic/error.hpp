#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace adelic {

enum class ErrorCode {
  // Malformed input: a value violated a type invariant or could not be parsed.
  InvalidArgument,
  ParseError,
  // Domain errors raised by operations on well-formed values.
  NoIntegerSolution,
  NonCoprimeModuli,
  InfinityOnFiniteAdele,
  ZeroComponent,
  NotInvertible,
  Infeasible,
  ClosedOrbitMiss,
  SearchBoundExceeded,
  NotIntegral,
  MalformedDescriptor,
  ImproperPoint,
  NegativeForQPlus,
};

std::string_view to_string(ErrorCode code) noexcept;

/// True for codes that signal a well-formed request the mathematics rejects.
bool is_domain_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& detail) {
  throw Error(code, detail);
}

}  // namespace adelic
