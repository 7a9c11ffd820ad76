#pragma once

#include <stdexcept>
#include <string>

namespace conslaw {

/// Base of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A jet variable would exceed the engine's maximum derivative order.
class OrderOverflow : public Error {
 public:
  using Error::Error;
};

/// evaluate() met a symbol with no value in the assignment.
class MissingSymbol : public Error {
 public:
  MissingSymbol(std::string symbol)
      : Error("no value assigned to symbol '" + symbol + "'"), symbol_(std::move(symbol)) {}
  const std::string& symbol() const { return symbol_; }

 private:
  std::string symbol_;
};

/// Reduction modulo a system did not reach a normal form.
class ReductionFailure : public Error {
 public:
  using Error::Error;
};

/// Input that is well formed but outside what an operation supports.
class Unsupported : public Error {
 public:
  using Error::Error;
};

/// Text input error with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        message_(message) {}

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  int line_;
  int column_;
  std::string message_;
};

}  // namespace conslaw
