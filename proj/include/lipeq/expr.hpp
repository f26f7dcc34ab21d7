#pragma once

#include "lipeq/poly.hpp"
#include "lipeq/rational.hpp"

#include <string_view>

namespace lipeq {

// Grammar (whitespace allowed between tokens):
//   expr     := term (('+' | '-') term)*
//   term     := factor ('*' factor)*
//   factor   := atom ('^' uint)?
//   atom     := 'l' | rational | '(' expr ')'
//   rational := int ('/' uint)?
// There is no unary minus; a leading '-' only starts a signed literal.
// Exponents are capped at 64, the same bound the class check puts on
// overlap exponents.
LambdaPoly parse_expr(std::string_view text);

// Whole-string rational literal, e.g. "1/6" or "-3". Throws SyntaxError.
Rational parse_rational(std::string_view text);

}  // namespace lipeq
