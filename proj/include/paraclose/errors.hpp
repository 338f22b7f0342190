#ifndef PARACLOSE_ERRORS_HPP
#define PARACLOSE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace paraclose {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define PARACLOSE_DEFINE_ERROR(Name)          \
  class Name : public Error {                 \
   public:                                    \
    explicit Name(const std::string& what)    \
        : Error(std::string(#Name ": ") + what) {} \
  }

PARACLOSE_DEFINE_ERROR(ZeroInverse);
PARACLOSE_DEFINE_ERROR(NotPrime);
PARACLOSE_DEFINE_ERROR(RingMismatch);
PARACLOSE_DEFINE_ERROR(WrongCharacteristic);
PARACLOSE_DEFINE_ERROR(ArityMismatch);
PARACLOSE_DEFINE_ERROR(ExponentOverflow);
PARACLOSE_DEFINE_ERROR(ZeroDivisorQuery);
PARACLOSE_DEFINE_ERROR(EmptyData);
PARACLOSE_DEFINE_ERROR(InvalidWitness);
PARACLOSE_DEFINE_ERROR(MapMismatch);
PARACLOSE_DEFINE_ERROR(BadPrime);
PARACLOSE_DEFINE_ERROR(ZeroMultiplier);
PARACLOSE_DEFINE_ERROR(SearchCapExceeded);
PARACLOSE_DEFINE_ERROR(InternalError);

#undef PARACLOSE_DEFINE_ERROR

/// Malformed textual input. Line is 0 when the source has no line structure.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error("ParseError at " + std::to_string(line) + ":" +
              std::to_string(column) + ": " + message),
        message_(message),
        line_(line),
        column_(column) {}

  const std::string& message() const noexcept { return message_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

  ParseError at_line(std::size_t line) const {
    return ParseError(message_, line, column_);
  }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace paraclose

#endif  // PARACLOSE_ERRORS_HPP
