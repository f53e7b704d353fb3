#include "daff/error.hpp"

#include <sstream>

namespace daff {

namespace {

std::string format_parse_error(std::size_t line, std::size_t col,
                               const std::vector<std::string>& expected,
                               const std::string& message) {
  std::ostringstream os;
  os << "ParseError at " << line << ":" << col << ": " << message;
  if (!expected.empty()) {
    os << " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) os << ", ";
      os << expected[i];
    }
    os << ")";
  }
  return os.str();
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t col, std::vector<std::string> expected,
                       const std::string& message)
    : Error(format_parse_error(line, col, expected, message)),
      line_(line),
      col_(col),
      expected_(std::move(expected)) {}

}  // namespace daff
