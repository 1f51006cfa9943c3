#ifndef VANETGRAPH_ERROR_HPP_
#define VANETGRAPH_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vanetgraph {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input data. Carries the 1-based line number (text formats) or
// byte offset (binary/XML formats) when known; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line = 0)
      : Error(line ? msg + " (line " + std::to_string(line) + ")" : msg),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Structurally valid input that violates the expected schema (e.g. a missing
// XML attribute).
class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& msg) : Error(msg) {}
};

// Invalid user-supplied parameter (counts, thresholds, intervals).
class ParamError : public Error {
 public:
  explicit ParamError(const std::string& msg) : Error(msg) {}
};

// Index outside the valid range of a graph or interval.
class BoundsError : public Error {
 public:
  explicit BoundsError(const std::string& msg) : Error(msg) {}
};

}  // namespace vanetgraph

#endif  // VANETGRAPH_ERROR_HPP_
