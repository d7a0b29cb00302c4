#ifndef RGROUND_EMITTER_HPP
#define RGROUND_EMITTER_HPP

#include <string>
#include <vector>

#include "rground/grounder.hpp"
#include "rground/script.hpp"

namespace rground {

// Serializes the grounded script as standard SMT-LIB: declarations for the
// symbols remaining in the groundings, interpretation assertions for
// still-referenced interpreted symbols, one assert per non-true grounding,
// then the carried-over trailer commands.
std::string emit(const Script& script, const std::vector<SentenceGrounding>& groundings);

}  // namespace rground

#endif
