#ifndef FERMATCI_ERRORS_HPP
#define FERMATCI_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fermatci {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched primes, variable counts, dimensions, or out-of-range indices.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Division by zero and similar.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

class UnsupportedAdjunction : public Error {
 public:
  using Error::Error;
};

class NotPBasis : public Error {
 public:
  using Error::Error;
};

class NoRewriting : public Error {
 public:
  using Error::Error;
};

class SearchExhausted : public Error {
 public:
  using Error::Error;
};

class NotApplicable : public Error {
 public:
  using Error::Error;
};

/// A certificate that was required to pass did not.
class CertificateFailure : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        message_(message),
        line_(line),
        column_(column) {}

  const std::string& message() const noexcept { return message_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace fermatci

#endif  // FERMATCI_ERRORS_HPP
