#pragma once

#include <stdexcept>
#include <string>

namespace lrc {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A documented precondition was violated by the caller.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An iterative solver exhausted its budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// A solver produced an answer that failed its own a-posteriori check,
// or a linear system was too ill-conditioned to trust.
class VerificationError : public Error {
 public:
  VerificationError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// The control constraint cannot be met at the current truncation.
class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace lrc
