#ifndef RGROUND_INTERP_HPP
#define RGROUND_INTERP_HPP

#include "rground/relation.hpp"
#include "rground/term.hpp"

namespace rground {

// Reserved attribute names of interpretation relations; they never collide
// with user variable names (the parser rejects the '.' prefix).
std::string interp_key_attr(size_t i);  // .a1, .a2, ...
std::string interp_val_attr();          // .fv

// Interpretation relation of a sort: one attribute named after the sort.
Relation sort_relation(TermStore& store, const Sort* sort);

// Interpretation relation of a ranked function symbol: key attributes plus a
// value column holding the interpreted value or the constructed application.
Relation function_relation(TermStore& store, const Structure& a, const FuncSym* fn);

// TU interpretation relation of a predicate: the rows whose value is not
// false. Finite whenever the representation allows, else a dropping view.
Relation predicate_tu_view(TermStore& store, const Structure& a, const FuncSym* fn);

// The spec-level operation: materialized finite TU relation, or InfiniteTU.
Relation predicate_tu_relation(TermStore& store, const Structure& a, const FuncSym* fn);

}  // namespace rground

#endif
