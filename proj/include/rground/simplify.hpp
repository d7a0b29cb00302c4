#ifndef RGROUND_SIMPLIFY_HPP
#define RGROUND_SIMPLIFY_HPP

#include "rground/term.hpp"

namespace rground {

// Local normalization by the laws of logic and arithmetic: boolean identities,
// literal comparison folding, exact numeric constant folding, conjunction
// flattening with duplicate removal. Idempotent and meaning-preserving.
const Term* simplify(TermStore& store, const Term* t);

}  // namespace rground

#endif
