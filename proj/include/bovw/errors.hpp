#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bovw {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input outside the mathematical domain of an operation (empty image,
// non-positive weight, zero-norm vector, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Caller broke an API contract (dimension mismatch, index out of range).
class ContractError : public Error {
 public:
  using Error::Error;
};

// Operation preconditions that depend on how the inputs were prepared,
// e.g. PSMI on images without vocabulary ids.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& path, std::size_t line, const std::string& what)
      : Error(path + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Binary file is truncated, corrupted or of an unknown version.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Index file was built against a different vocabulary.
class CompatibilityError : public Error {
 public:
  using Error::Error;
};

}  // namespace bovw
