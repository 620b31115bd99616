#pragma once

#include <stdexcept>
#include <string>

namespace radnlp {

// Base for every error the library reports. Callers that only need a message
// can catch std::runtime_error.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file; carries the offending line when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, int line, const std::string& what)
      : Error(source + (line > 0 ? ":" + std::to_string(line) : "") + ": " +
              what),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace radnlp
