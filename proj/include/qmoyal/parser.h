#pragma once

// Recursive-descent parser for operator expressions in P, X and for commuting
// symbols in p, x. Both grammars share scalars built from integers,
// rationals, q and h.
//
//   expr     := ['-'] term (('+' | '-') term)*
//   term     := factor ((['*'] factor) | ('/' factor))*
//   factor   := atom ['^' exponent]
//   atom     := NUMBER | 'q' | 'h' | letter | '(' expr ')'
//   exponent := INT | '-' INT | '(' ['-'] NUMBER ')'
//
// NUMBER is an integer or a rational a/b written without spaces. Division is
// only by a pure scalar. Fractional exponents must be parenthesized.

#include <string>

#include "qmoyal/operator_algebra.h"
#include "qmoyal/star_calculus.h"

namespace qmoyal {

/// Letters P and X with non-negative integer powers. Throws ParseError.
OperatorExpr parse_operator_expr(const std::string& src, const QContext& ctx = {});

/// Letters p and x with exponents in (1/D)Z. Throws ParseError or
/// NonRepresentableExponent.
SymbolPoly parse_symbol_expr(const std::string& src, const QContext& ctx = {});

}  // namespace qmoyal
