#pragma once

#include <stdexcept>
#include <string>

namespace motslab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedParameters : public Error { public: using Error::Error; };
class ConfigError : public Error { public: using Error::Error; };
class ConstraintError : public Error { public: using Error::Error; };
class ShapeError : public Error { public: using Error::Error; };
class DomainError : public Error { public: using Error::Error; };
class PositivityError : public Error { public: using Error::Error; };
class ResolutionError : public Error { public: using Error::Error; };

class FocusingError : public Error {
 public:
  FocusingError(const std::string& what, double ubar) : Error(what), ubar_(ubar) {}
  double ubar() const { return ubar_; }
 private:
  double ubar_;
};

class NonConvergence : public Error { public: using Error::Error; };

// Raised by assemble() when one slice fails; carries the slice index.
class AssemblyError : public NonConvergence {
 public:
  AssemblyError(const std::string& what, int slice) : NonConvergence(what), slice_(slice) {}
  int slice() const { return slice_; }
 private:
  int slice_;
};

class DependencyError : public Error {
 public:
  DependencyError(const std::string& what, std::string needs)
      : Error(what), needs_(std::move(needs)) {}
  const std::string& required_subcommand() const { return needs_; }
 private:
  std::string needs_;
};

}  // namespace motslab
