#pragma once

#include <stdexcept>
#include <string>

namespace survkit {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input data violates a documented precondition (bad event code, nonpositive
// time, missing values where none are allowed, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A column-role mapping names columns that do not exist, or is otherwise
// malformed.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Model fitting cannot proceed or failed irrecoverably (no events,
// unidentifiable configuration, ...). Soft convergence issues are reported
// through fit diagnostics instead.
class FitError : public Error {
 public:
  using Error::Error;
};

// A metric is inestimable for the requested inputs (censoring weight hits
// zero, empty comparable set, ...).
class MetricError : public Error {
 public:
  using Error::Error;
};

}  // namespace survkit
