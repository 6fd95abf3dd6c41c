#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ordcalc {

/// Byte offsets into parser input, half-open.
struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text, or a term that violates the selected system's grammar.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, SourceSpan span) : Error(what), span_(span) {}
  SourceSpan span() const { return span_; }

 private:
  SourceSpan span_;
};

/// Term construction outside the grammar (mixed systems, bad indices, variable scope).
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its stated precondition.
class PreconditionError : public Error {
 public:
  PreconditionError(std::string precondition, const std::string& detail)
      : Error(precondition + ": " + detail), precondition_(std::move(precondition)) {}
  const std::string& precondition() const { return precondition_; }

 private:
  std::string precondition_;
};

/// An upward level shift would move a free cardinal into a bound position.
class ShiftError : public Error {
 public:
  using Error::Error;
};

/// Something that the definitions guarantee did not hold.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace ordcalc
