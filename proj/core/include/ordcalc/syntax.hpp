#pragma once

// Text grammar shared by every system. '#' is the only infix operator and
// binds loosest; every head takes parenthesised arguments.
//
//   term  := "0" | hterm ("#" hterm)*
//   hterm := "w^(" term ")"
//          | "O_" nat | "O^(" int ")" | "OO_" nat "^(" int ")" | "Xi^(" int ")(" term ")"
//          | "th_" nat "(" term ")" | "th(" term ")"
//          | "thO_" nat "(" term ")" | "thOO_" nat "(" term ")" | "thXi(" term ")"
//          | "v." ident "_" nat | "v." ident "^(" int ")" | "V." ident "^(" int ")(" term ")"

#include <string>
#include <string_view>

#include "ordcalc/term.hpp"

namespace ordcalc {

/// Parses and validates against the system's grammar. Throws ParseError with
/// the span of the offending token.
Term parse(SystemId system, std::string_view text);

/// Canonical text; parse(t.system(), render(t)) == t.
std::string render(const Term& t);

/// Checks that a term built outside the parser lies in the system's grammar
/// (allowed heads, index ranges, variable scoping). Returns an empty string
/// when it does, otherwise a description of the first problem.
std::string grammar_violation(const Term& t);

}  // namespace ordcalc
