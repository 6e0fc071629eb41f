#ifndef DGKIT_UTIL_ERRORS_H_
#define DGKIT_UTIL_ERRORS_H_

#include <stdexcept>
#include <string>

namespace dgkit {

// Caller violated an API contract (unknown id, mismatched frames, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input is too small or geometrically degenerate for the estimator.
class DegenerateInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A ratio with an empty denominator was requested.
class UndefinedRatioError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed text input. The message carries the source and line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, int line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace dgkit

#endif  // DGKIT_UTIL_ERRORS_H_
