#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace inept {

/// Raised when a parameter lies outside an operation's domain.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an input breaks a documented precondition of an algorithm
/// (e.g. a non-Hermitian matrix handed to the Hermitian eigensolver).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The state is never entangled, so no survival threshold exists.
class UndefinedThreshold : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

struct ValidationIssue {
  std::string check;  // "hermitian", "trace" or "psd"
  double magnitude;
};

class ValidationError : public InvalidArgument {
 public:
  explicit ValidationError(std::vector<ValidationIssue> issues)
      : InvalidArgument(describe(issues)), issues_(std::move(issues)) {}

  const std::vector<ValidationIssue>& issues() const noexcept { return issues_; }

 private:
  static std::string describe(const std::vector<ValidationIssue>& issues) {
    std::string msg = "density matrix validation failed:";
    for (const auto& i : issues) {
      msg += " " + i.check + " (magnitude " + std::to_string(i.magnitude) + ")";
    }
    return msg;
  }

  std::vector<ValidationIssue> issues_;
};

}  // namespace inept
