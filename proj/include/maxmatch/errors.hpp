#pragma once

#include <stdexcept>
#include <string>

namespace maxmatch {

// Base class for all input-level failures.  CLI maps these to exit code 2;
// anything else escaping to main is an internal error (exit code 1).
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
  ParseError(const std::string& msg, int line = 0, int column = 0)
      : Error(locate(msg, line, column)), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

private:
  static std::string locate(const std::string& msg, int line, int column) {
    if (line <= 0) return msg;
    std::string s = "line " + std::to_string(line);
    if (column > 0) s += ":" + std::to_string(column);
    return s + ": " + msg;
  }

  int line_;
  int column_;
};

class AlignmentError : public Error {
public:
  using Error::Error;
};

class SpanError : public Error {
public:
  using Error::Error;
};

class OverlapError : public Error {
public:
  using Error::Error;
};

class SizeError : public Error {
public:
  using Error::Error;
};

class LengthMismatchError : public Error {
public:
  using Error::Error;
};

class InvariantError : public Error {
public:
  using Error::Error;
};

}  // namespace maxmatch
