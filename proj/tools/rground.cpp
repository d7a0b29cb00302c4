#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rground/emitter.hpp"
#include "rground/grounder.hpp"
#include "rground/oracle.hpp"
#include "rground/script.hpp"
#include "rground/solver_bridge.hpp"

namespace {

using namespace rground;

struct StderrSink : TraceSink {
  void relation(const std::string& label, const Relation& rel) override {
    std::cerr << "== " << label << "\n" << debug_dump(rel) << "\n";
  }
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) fail(Err::Io, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct GroundOutcome {
  std::string text;
  double ground_seconds = 0.0;
  long residuals = 0;
};

GroundOutcome ground_text(const std::string& input, bool dump, bool want_stats) {
  auto t0 = std::chrono::steady_clock::now();
  Script script = parse_script(input);
  preprocess(script);
  Grounder grounder(*script.store, script.structure);
  StderrSink sink;
  if (dump) grounder.set_trace(&sink);
  std::vector<SentenceGrounding> groundings;
  int index = 0;
  for (const auto& c : script.commands) {
    if (c.type != Command::Type::Assert) continue;
    auto a0 = std::chrono::steady_clock::now();
    groundings.push_back(grounder.ground_sentence(c.term));
    auto a1 = std::chrono::steady_clock::now();
    if (want_stats)
      std::cerr << "; assertion " << ++index << ": "
                << std::chrono::duration<double, std::milli>(a1 - a0).count() << " ms"
                << (groundings.back().residual ? " (residual)" : "") << "\n";
  }
  GroundOutcome out;
  out.text = emit(script, groundings);
  out.residuals = grounder.stats().residuals;
  auto t1 = std::chrono::steady_clock::now();
  out.ground_seconds = std::chrono::duration<double>(t1 - t0).count();
  if (want_stats) {
    std::cerr << "; rule applications:";
    for (const auto& [rule, n] : grounder.stats().rule_counts)
      std::cerr << " " << rule << "=" << n;
    std::cerr << "\n; largest relation: " << grounder.stats().max_rows << " rows\n";
  }
  return out;
}

int run_main(const std::string& input_path, bool ground_only, std::string solver,
             double timeout, const std::string& output_path, bool stats, bool dump) {
  GroundOutcome outcome;
  try {
    outcome = ground_text(read_input(input_path), dump, stats);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  if (!output_path.empty()) {
    std::ofstream out(output_path);
    if (!out) {
      std::cerr << "error: cannot write " << output_path << "\n";
      return 1;
    }
    out << outcome.text;
  }
  if (solver.empty() || ground_only) {
    if (output_path.empty()) std::cout << outcome.text;
    std::cerr << "; ground time: " << outcome.ground_seconds * 1000.0 << " ms\n";
    return 0;
  }
  SolveResult sr = run_solver(solver, outcome.text, timeout);
  std::cout << sr.output;
  std::cerr << "; ground time: " << outcome.ground_seconds * 1000.0 << " ms\n";
  std::cerr << "; solve time: " << sr.solve_seconds * 1000.0 << " ms\n";
  std::cerr << "; total: " << (outcome.ground_seconds + sr.solve_seconds) * 1000.0 << " ms\n";
  if (sr.timed_out) {
    std::cerr << "error: solver timeout\n";
    return 2;
  }
  if (sr.spawn_failed) {
    std::cerr << "error: could not run solver: " << solver << "\n";
    return 2;
  }
  if (sr.verdict == "sat" || sr.verdict == "unsat") return 0;
  std::cerr << "error: no verdict from solver\n";
  return 2;
}

int run_bench(const std::string& family, int size, std::string solver, double timeout) {
  std::string input;
  try {
    input = generate_instance(family, size);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  GroundOutcome outcome;
  try {
    outcome = ground_text(input, false, false);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::string verdict = "-";
  double solve_ms = 0.0;
  if (!solver.empty()) {
    SolveResult sr = run_solver(solver, outcome.text, timeout);
    solve_ms = sr.solve_seconds * 1000.0;
    verdict = sr.timed_out ? "timeout" : (sr.verdict.empty() ? "none" : sr.verdict);
  }
  std::cout << family << "," << size << "," << outcome.ground_seconds * 1000.0 << ","
            << solve_ms << "," << verdict << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rground: grounds model-expansion SMT-LIB scripts for any SMT solver"};
  app.require_subcommand(0, 1);

  std::string input = "-";
  std::string solver;
  std::string output;
  double timeout = 600.0;
  bool ground_only = false, stats = false, dump = false;
  if (const char* env = std::getenv("RGROUND_SOLVER")) solver = env;

  app.add_option("input", input, "input script path, or - for stdin");
  app.add_flag("--ground-only", ground_only, "emit the grounded script without solving");
  app.add_option("--solver", solver, "external solver command (reads SMT-LIB on stdin)");
  app.add_option("--timeout", timeout, "solver timeout in seconds")->check(CLI::PositiveNumber);
  app.add_option("--output", output, "write the grounded script to this path");
  app.add_flag("--stats", stats, "print per-assertion timings and rule counts to stderr");
  app.add_flag("--dump-relations", dump, "print intermediate relations to stderr");

  auto* bench = app.add_subcommand("bench", "generate, ground and optionally solve an instance");
  bench->fallthrough();
  std::string family;
  int size = 1;
  bench->add_option("family", family, "graph-coloring | n-queens | pigeonhole | common-item")
      ->required();
  bench->add_option("size", size, "instance size")->required();

  CLI11_PARSE(app, argc, argv);

  if (bench->parsed()) return run_bench(family, size, solver, timeout);
  return run_main(input, ground_only, solver, timeout, output, stats, dump);
}
