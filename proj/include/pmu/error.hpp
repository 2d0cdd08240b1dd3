#pragma once

#include <stdexcept>
#include <string>

namespace pmu {

/// Broad failure classes. Each maps onto one CLI exit code.
enum class ErrorKind {
  kParameter,
  kShape,
  kDegenerateInput,
  kUndefinedMetric,
  kDivergence,
  kIo,
  kFormat,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParameterError : public Error {
 public:
  explicit ParameterError(const std::string& what) : Error(ErrorKind::kParameter, what) {}
};

class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& what) : Error(ErrorKind::kShape, what) {}
};

class DegenerateInputError : public Error {
 public:
  explicit DegenerateInputError(const std::string& what)
      : Error(ErrorKind::kDegenerateInput, what) {}
};

class UndefinedMetricError : public Error {
 public:
  explicit UndefinedMetricError(const std::string& what)
      : Error(ErrorKind::kUndefinedMetric, what) {}
};

class DivergenceError : public Error {
 public:
  explicit DivergenceError(const std::string& what) : Error(ErrorKind::kDivergence, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::kIo, what) {}
};

/// Malformed file content. `FormatIssue` tells the variants apart.
enum class FormatIssue { kRaggedRows, kNonNumeric, kMaskShapeMismatch, kMaskValue, kMissingValue };

class FormatError : public Error {
 public:
  FormatError(FormatIssue issue, const std::string& what)
      : Error(ErrorKind::kFormat, what), issue_(issue) {}
  FormatIssue issue() const noexcept { return issue_; }

 private:
  FormatIssue issue_;
};

}  // namespace pmu
