#ifndef TSHIFT_SYMBOL_PARSER_HPP
#define TSHIFT_SYMBOL_PARSER_HPP

#include <stdexcept>
#include <string_view>
#include <vector>

#include "tshift/decomposition.hpp"

namespace tshift {

class SyntaxError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Grammar (whitespace-insensitive):
//   symbol  := term ('+' term)*
//   term    := [rational ['*']] factor+
//   factor  := 'z' ['^' int] | 'zbar' ['^' int]
// e.g. "z^2 zbar^1", "1/2*z zbar + 1/4*z^2 zbar^2".
std::vector<Monomial> parse_symbol(std::string_view text);

// "bergman-h", "wbergman:alpha=A", "gdhardy:alpha=A,beta=B".
Space parse_space(std::string_view text);

SymbolSpec parse_symbol_spec(std::string_view symbol, std::string_view space);

}  // namespace tshift

#endif  // TSHIFT_SYMBOL_PARSER_HPP
