// Polynomial expressions: parsing against a variable spec and canonical
// printing.
#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "multiheight/polycore.hpp"

namespace mh {

struct ParseError : Error {
  ParseError(const std::string& msg, size_t pos);
  size_t pos;
};

// Grammar: expr ::= ['+'|'-'] term (('+'|'-') term)*; term ::= factor ('*'
// factor)*; factor ::= primary ['^' integer]; primary ::= integer ['/'
// integer] | variable | '(' expr ')'. Multiplication must be explicit.
MPoly parse_poly(std::string_view text, const Spec& spec);

// Graded-lex descending, explicit '*' and '^'; parse_poly inverts it.
std::string print_poly(const MPoly& f);

}  // namespace mh
