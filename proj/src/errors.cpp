#include "phonosurp/errors.hpp"

namespace phonosurp {

namespace {

std::string with_line(const std::string& what, std::size_t line) {
  if (line == 0) return what;
  return "line " + std::to_string(line) + ": " + what;
}

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t line)
    : Error(with_line(what, line)), line_(line) {}

RejectedSymbolError::RejectedSymbolError(const std::string& token, std::size_t line)
    : ParseError("rejected phoneme symbol '" + token + "'", line), token_(token) {}

}  // namespace phonosurp
