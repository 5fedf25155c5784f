#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace phonosurp {

// Base of every error raised by the toolkit. The CLI maps these to exit status 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input text that cannot be parsed. Carries the 1-based line number when the
// failure is tied to a line of a file (0 otherwise).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class EmptyTranscriptionError : public ParseError {
 public:
  using ParseError::ParseError;
};

class RejectedSymbolError : public ParseError {
 public:
  RejectedSymbolError(const std::string& token, std::size_t line = 0);
  const std::string& token() const { return token_; }

 private:
  std::string token_;
};

// Malformed entry in a pronouncing dictionary.
class DictionaryFormatError : public ParseError {
 public:
  using ParseError::ParseError;
};

// A delimited table lacks a required column.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// A single data row is unusable (bad integer, out-of-range norm value, ...).
class RowError : public ParseError {
 public:
  using ParseError::ParseError;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class UnknownContextError : public Error {
 public:
  using Error::Error;
};

class InfiniteSurprisalError : public Error {
 public:
  using Error::Error;
};

class UndefinedAverageError : public Error {
 public:
  using Error::Error;
};

class UnderdeterminedModelError : public Error {
 public:
  using Error::Error;
};

class DegenerateResponseError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ExpectationFileError : public ParseError {
 public:
  using ParseError::ParseError;
};

}  // namespace phonosurp
