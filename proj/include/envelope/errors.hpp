#pragma once

#include <stdexcept>
#include <string>

namespace envelope {

/// Base class of every error raised by the solvers. `kind()` is a short
/// stable identifier used in machine-readable error records.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& m) : Error("domain", m) {}
};

class NoRootError : public Error {
 public:
  NoRootError(const std::string& m, std::string trace)
      : Error("no-root", m), trace_(std::move(trace)) {}
  const std::string& trace() const noexcept { return trace_; }

 private:
  std::string trace_;
};

class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& m, double r_aa, double r_0, double residual)
      : Error("non-convergence", m), r_aa_(r_aa), r_0_(r_0), residual_(residual) {}
  double last_r_aa() const noexcept { return r_aa_; }
  double last_R0() const noexcept { return r_0_; }
  double last_residual() const noexcept { return residual_; }

 private:
  double r_aa_, r_0_, residual_;
};

class UnstableOrbitalError : public Error {
 public:
  explicit UnstableOrbitalError(const std::string& m) : Error("unstable-orbital", m) {}
};

class DegenerateOrbitalError : public Error {
 public:
  explicit DegenerateOrbitalError(const std::string& m) : Error("degenerate-orbital", m) {}
};

class UnsupportedRegimeError : public Error {
 public:
  explicit UnsupportedRegimeError(const std::string& m) : Error("unsupported-regime", m) {}
};

class NoBindingError : public Error {
 public:
  explicit NoBindingError(const std::string& m) : Error("no-binding", m) {}
};

/// Malformed user input (definition files, CLI arguments, law parameters).
class InputError : public Error {
 public:
  explicit InputError(const std::string& m) : Error("input", m) {}
};

}  // namespace envelope
