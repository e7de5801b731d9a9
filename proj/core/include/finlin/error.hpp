#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace finlin {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, std::size_t pos)
      : Error(msg + " at offset " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

class UnknownSymbol : public Error {
 public:
  using Error::Error;
};

class UnboundVariable : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Raised when a construction exceeds its configured resource budget. This is
// not a verdict; callers must report it distinctly.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace finlin
