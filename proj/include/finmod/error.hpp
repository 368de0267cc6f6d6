#ifndef FINMOD_ERROR_HPP
#define FINMOD_ERROR_HPP

#include <stdexcept>
#include <string>

namespace finmod {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input document or value violates a structural invariant.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed its configured cap. Never a silent truncation.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Formula text does not conform to the grammar.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position, std::size_t token)
      : Error(what), position_(position), token_(token) {}

  /// Byte offset of the offending token.
  std::size_t position() const noexcept { return position_; }
  /// Zero-based index of the offending token.
  std::size_t token() const noexcept { return token_; }

 private:
  std::size_t position_;
  std::size_t token_;
};

}  // namespace finmod

#endif  // FINMOD_ERROR_HPP
