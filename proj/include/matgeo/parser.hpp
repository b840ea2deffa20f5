#pragma once

#include <string>

#include "matgeo/field.hpp"

namespace matgeo {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)),
        position(pos) {}
  std::size_t position;
};

// Parses a closed-form expression in the variables x and y:
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' integer)?
//   base   := number | 'x' | 'y' | func '(' expr ')' | '(' expr ')'
//   func   := exp | ln | sin | cos | sqrt | atan2   (atan2 takes two args)
//
// The result evaluates to full third-order Taylor data at any point of the
// given domain.
ScalarField2 parse_field(const std::string& text,
                         Domain dom = Domain::plane());

}  // namespace matgeo
