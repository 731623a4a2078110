#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace knotscope {

/// Base of every error the library throws. The CLI maps each subclass to a
/// distinct exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `row` is the 1-based data row (0 when not
/// row-specific, e.g. a bad header or a standalone polynomial string).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t row = 0)
      : Error(row ? "row " + std::to_string(row) + ": " + what : what), row_(row) {}
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

/// Input parsed but violates a domain rule (odd signature, duplicate id, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A required field or invariant is absent on some record.
class MissingDataError : public Error {
 public:
  using Error::Error;
};

/// Two sources of the same information disagree.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

/// Argument outside an operation's domain (evaluation at 0, span of 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Embedding spec no longer covers the data it is applied to.
class StaleSpecError : public Error {
 public:
  using Error::Error;
};

}  // namespace knotscope
