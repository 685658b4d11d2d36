#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cfs {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown coordinate or label, inconsistent schemas, oversized spaces.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Weights that are negative or do not sum to exactly one.
class MeasureError : public Error {
 public:
  using Error::Error;
};

/// Conditioning on an event of probability zero.
class ConditioningUndefined : public Error {
 public:
  using Error::Error;
};

/// A kernel (or a kernel entry) required by an operation is absent.
class MissingKernel : public Error {
 public:
  using Error::Error;
};

/// A model cannot be compiled into a counterfactual space.
class CompileError : public Error {
 public:
  using Error::Error;
};

/// Lexical, grammatical or semantic error in an input document.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace cfs
