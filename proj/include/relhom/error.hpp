#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace relhom {

  // Base class for every exception thrown by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // Malformed presentation or module text.
  class ParseError : public Error {
   public:
    ParseError(std::size_t line, std::size_t column, std::string const& what)
        : Error("line " + std::to_string(line) + ", column "
                + std::to_string(column) + ": " + what),
          _line(line),
          _column(column) {}

    std::size_t line() const noexcept { return _line; }
    std::size_t column() const noexcept { return _column; }

   private:
    std::size_t _line;
    std::size_t _column;
  };

  // Coset enumeration ran past its table limit without closing.
  class EnumerationLimitError : public Error {
   public:
    using Error::Error;
  };

  // A computation was refused because its ambient lattice is too large.
  class BudgetExceeded : public Error {
   public:
    using Error::Error;
  };

  // A mathematical invariant that must hold did not; always an upstream bug
  // or an invalid input object, never a legitimate answer.
  class InvariantViolation : public Error {
   public:
    using Error::Error;
  };

}  // namespace relhom
