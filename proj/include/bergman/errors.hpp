#pragma once

#include <stdexcept>
#include <string>

namespace bergman {

enum class ErrorKind { Domain, Singular, Convergence, Io };

/// Base of every error thrown by the library. `code()` is a stable
/// machine-readable identifier used by the CLI diagnostics.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& message)
      : std::runtime_error(message), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& code() const noexcept { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

/// Invalid arguments: parameters outside their domain, violated preconditions.
class DomainError : public Error {
 public:
  DomainError(std::string code, const std::string& message)
      : Error(ErrorKind::Domain, std::move(code), message) {}
};

/// Evaluation at a genuine singularity (kernel pole, root on a contour).
class SingularError : public Error {
 public:
  SingularError(std::string code, const std::string& message)
      : Error(ErrorKind::Singular, std::move(code), message) {}
};

/// An iterative method did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(std::string code, const std::string& message)
      : Error(ErrorKind::Convergence, std::move(code), message) {}
};

class IoError : public Error {
 public:
  IoError(std::string code, const std::string& message)
      : Error(ErrorKind::Io, std::move(code), message) {}
};

}  // namespace bergman
