#include "windfeas/error.hpp"

#include <utility>

namespace windfeas {

namespace {

std::string format_parse_message(const std::string& file, std::size_t line,
                                 const std::string& what) {
  std::string msg = file.empty() ? std::string("<input>") : file;
  if (line > 0) {
    msg += ":" + std::to_string(line);
  }
  msg += ": " + what;
  return msg;
}

}  // namespace

ParseError::ParseError(std::string file, std::size_t line, const std::string& what)
    : Error(format_parse_message(file, line, what)), file_(std::move(file)), line_(line) {}

}  // namespace windfeas
