#pragma once

#include <string_view>
#include <utility>

#include "finlin/formula.hpp"

namespace finlin {

// Parses the concrete formula syntax:
//
//   formula    := quantified | iff
//   quantified := ("A"|"E") ident "." formula
//   iff        := impl ("<->" impl)*
//   impl       := disj ("->" disj)*      (right associative)
//   disj       := conj ("|" conj)*
//   conj       := neg ("&" neg)*
//   neg        := "~" neg | atom | quantified
//   atom       := var "<" var | var "=" var | Pred "(" var ")"
//               | Rel "(" var "," var ")" | "true" | "false" | "(" formula ")"
//
// Predicates are capitalized identifiers; variables start lowercase. Every
// predicate must be declared in `sig` with the arity it is used at.
Formula parse(std::string_view text, const Signature& sig);

// Same grammar; the signature is inferred from the text. Unary predicates
// are sorted by name.
std::pair<Formula, Signature> parse_infer(std::string_view text);

}  // namespace finlin
