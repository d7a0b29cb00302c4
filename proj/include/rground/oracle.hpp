#ifndef RGROUND_ORACLE_HPP
#define RGROUND_ORACLE_HPP

#include <string>
#include <vector>

#include "rground/script.hpp"
#include "rground/term.hpp"

namespace rground {

struct BruteForceResult {
  bool sat = false;
  Structure witness;  // a satisfying total expansion when sat
  long long checked = 0;
};

// Enumerates every total expansion of the partial structure over the symbols
// occurring in the sentences and returns the first satisfying one. The
// expansion space is capped (SearchSpaceTooLarge beyond it).
BruteForceResult brute_force_satisfiable(TermStore& store, const Structure& partial,
                                         const std::vector<const Term*>& sentences,
                                         long long cap = 1000000);

BruteForceResult brute_force_script(Script& script, long long cap = 1000000);

// ---- instance generators (deterministic) -------------------------------------

std::string gen_graph_coloring_path(int edges, int colors);
std::string gen_graph_coloring(int nodes, int edges, int colors, unsigned seed);
std::string gen_n_queens(int n);
std::string gen_pigeonhole(int pigeons, int holes);
std::string gen_common_item(int n);

// Bench dispatch: family is one of graph-coloring, n-queens, pigeonhole,
// common-item.
std::string generate_instance(const std::string& family, int size);

}  // namespace rground

#endif
