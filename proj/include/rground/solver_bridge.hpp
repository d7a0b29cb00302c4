#ifndef RGROUND_SOLVER_BRIDGE_HPP
#define RGROUND_SOLVER_BRIDGE_HPP

#include <string>

namespace rground {

struct SolveResult {
  bool spawn_failed = false;
  bool timed_out = false;
  int exit_code = 0;
  std::string output;   // child stdout
  std::string verdict;  // first non-empty output line (sat / unsat / unknown)
  double solve_seconds = 0.0;
};

// Spawns the solver command via the shell, streams the script to its standard
// input and collects its standard output. Writing and reading proceed
// independently so neither pipe can deadlock. The child is killed on timeout.
SolveResult run_solver(const std::string& command, const std::string& script_text,
                       double timeout_seconds);

}  // namespace rground

#endif
