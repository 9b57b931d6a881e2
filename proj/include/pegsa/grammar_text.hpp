#pragma once

#include <string>
#include <string_view>

#include "pegsa/peg.hpp"

namespace pegsa {

/// Parses the line-oriented grammar format:
///
///   # comment
///   @terminals '01#o'
///   @start S
///   S <- 'a' S / ()
///        / FAIL           # a line starting with '/' continues the previous rule
///
/// Expressions: `()` ε, `FAIL`, `.` any symbol, `'c'` terminal, `'abc'` literal,
/// `!e`, `&e`, `e*`, `e+`, `e{n}`, juxtaposition for sequence, `/` for choice.
/// Without `@terminals`, Σ is the set of quoted symbols in order of appearance.
/// Throws FormatError with a line number on malformed text.
Grammar parse_grammar(std::string_view text);

/// Prints a grammar in the format accepted by parse_grammar.
std::string print_grammar(const Grammar& g);

/// Prints one expression with the minimum parentheses needed to reparse it.
std::string print_expr(const Expr& e);

/// Replaces every UTF-8 "∘" with the ASCII symbol 'o' used internally.
std::string ascii_circle(std::string_view s);

}  // namespace pegsa
