#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace toric {

/// Category of a failure raised by the library. Callers that need to react to a
/// particular failure (the CLI exit code, the pipeline diagnostics) switch on it.
enum class ErrorKind {
  shape,
  index,
  precondition,
  contraction,
  flip,
  disjointness,
  unsupported,
  non_fano,
  wrong_minimal_dimension,
  not_contractible,
  unexpected_relation,
  verification,
  underdetermined,
  inconsistent,
  invalid_fan,
  pc_mismatch,
  parse,
  invalid_certificate,
  malformed_log,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure carrying the 1-based line number of the offending input line.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message)
      : Error(ErrorKind::parse, "line " + std::to_string(line) + ": " + message), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace toric
