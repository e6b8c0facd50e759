#pragma once

#include <string>

#include "wkc/formula.hpp"

namespace wkc {

// Grammar (precedence ~ > & > | > -> > <->, -> right-associative):
//   formula := iff
//   iff     := imp ("<->" imp)*
//   imp     := disj ("->" imp)?
//   disj    := conj ("|" conj)*
//   conj    := neg ("&" neg)*
//   neg     := "~" neg | atom
//   atom    := "true" | "false" | IDENT | "(" formula ")"
// Whitespace-insensitive; "#" starts a comment to end of line.
// `source` names the input in error messages.
Formula parse_formula(const std::string& text, const std::string& source = "");

} // namespace wkc
