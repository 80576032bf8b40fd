#pragma once

#include <string_view>

#include "stlsmooth/formula.hpp"

namespace stlsmooth {

/// Parses STL text.
///
///   formula := or
///   or      := and ("|" and)*
///   and     := until ("&" until)*
///   until   := unary ("U[" int "," int "]" unary)*      left-associative
///   unary   := "!" unary | "F[" int "," int "]" unary
///            | "G[" int "," int "]" unary | atom
///   atom    := ident | "(" formula ")"
///
/// Prefix operators bind tighter than U, which binds tighter than &, then |.
/// A chain a & b & c yields one three-operand conjunction. Identifiers are
/// resolved in `table`; macros are inlined.
///
/// Throws ParseError (with line/column), UnknownIdentifierError or
/// IntervalError.
Formula parse(std::string_view text, const PredicateTable& table);

}  // namespace stlsmooth
