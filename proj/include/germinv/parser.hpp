#pragma once

#include <germinv/bivar_poly.hpp>

#include <string>
#include <string_view>

namespace germinv {

/// Parses the polynomial grammar
///
///   expr     := ['-'] term (('+'|'-') term)*
///   term     := factor ('*' factor)*
///   factor   := base ('^' nonneg-int)?
///   base     := 'x' | 'y' | rational | '(' expr ')'
///   rational := int ('/' posint)?
///
/// Whitespace is ignored. Juxtaposition ("2x") is a syntax error.
/// Throws ParseError (SyntaxError, UnknownVariable, NegativeExponent).
BivarPoly parse_poly(std::string_view text);

/// Canonical text form in ascending graded-lex order, e.g. "3*x^2*y - 6*x*y^5".
/// Re-parsing the output yields the same polynomial.
std::string to_string(const BivarPoly& p);

}  // namespace germinv
