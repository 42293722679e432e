#pragma once

#include <stdexcept>
#include <string>

namespace tesselogic {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input: grid files, SFT files, formulas.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, int line = 0, int column = 0)
      : Error(line > 0 ? what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"
                       : what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Two values that must share an alphabet do not.
class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

/// A formula lies outside the fragment an operation accepts.
class FragmentError : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed the configured search budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Any other violated precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace tesselogic
