#pragma once

#include <stdexcept>
#include <string>

namespace hypersurf {

// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Lexical or syntactic failure while parsing an expression.
// `position` is the 0-based character offset into the source text.
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t position)
        : Error(msg + " (at position " + std::to_string(position) + ")"),
          position(position) {}
    std::size_t position;
};

// Mathematical domain violation: log/sqrt of a negative number, division
// by zero, 0^negative, evaluation at a non-smooth point, pole crossing.
struct DomainError : Error {
    using Error::Error;
};

// Precondition or configuration violation (bad arity, bad parameters,
// empty grid, step <= 0, ...).
struct InvalidArgument : Error {
    using Error::Error;
};

}  // namespace hypersurf
