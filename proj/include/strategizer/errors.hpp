#pragma once

#include <stdexcept>
#include <string>

namespace strategizer {

// Error categories map one-to-one onto the CLI exit codes.
enum class ErrorKind { input = 2, precondition = 3, resource_cap = 4 };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

// Malformed or inconsistent input (bad dimensions, parse failures).
class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(ErrorKind::input, what) {}
};

// Well-formed input that violates an operation's precondition.
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what)
      : Error(ErrorKind::precondition, what) {}
};

// An exhaustive search or iteration budget would be exceeded.
class ResourceCapError : public Error {
 public:
  explicit ResourceCapError(const std::string& what)
      : Error(ErrorKind::resource_cap, what) {}
};

}  // namespace strategizer
