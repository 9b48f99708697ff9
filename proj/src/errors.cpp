#include "lagnewton/errors.hpp"

namespace lagnewton {

namespace {

std::string format_parse_message(const std::string& source, std::size_t line,
                                 const std::string& what) {
  std::string msg = source;
  if (line > 0) msg += ":" + std::to_string(line);
  msg += ": " + what;
  return msg;
}

}  // namespace

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& what)
    : std::runtime_error(format_parse_message(source, line, what)), line_(line) {}

std::string describe_shape(long rows, long cols) {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

}  // namespace lagnewton
