#pragma once

#include <string>
#include <string_view>

#include "mbt/term.hpp"

namespace mbt {

enum class TermSort { sum, equation };

/// "sumreduce" and "hypostrat:*" read sums; "polyeq" reads equation states.
TermSort term_sort_of(std::string_view domain_id);

/// Reads the fixture grammar:
///
///   sum      := int ("+" int)*                        ints may be negative
///   state    := entry | "[" entry ("," entry)? "]"
///   entry    := side "=" side | "true" | "false"
///   side     := ["+"|"-"] term (("+"|"-") term)*
///   term     := number | [number ["*"]] xpart
///   xpart    := "x" ["^" ("1"|"2")] | factor "^2" | factor factor
///   factor   := "(" [number ["*"]] "x" [("+"|"-") number] ")"
///   number   := rational | [rational ["*"]] "sqrt(" int ")" | "(" number ("+"|"-") number ")"
///
/// Equations are kept as written; only coefficients are normalized.
Term parse_term(std::string_view text, std::string_view domain_id);

SumExpr parse_sum(std::string_view text);
EqState parse_eq_state(std::string_view text);

std::string print_term(const Term& term);
std::string print_sum(const SumExpr& e);
std::string print_eq_state(const EqState& s);
std::string print_equation(const Equation& e);
std::string print_number(const ExactNumber& v);

}  // namespace mbt
