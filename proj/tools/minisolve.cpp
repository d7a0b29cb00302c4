// A small SMT-LIB solver for grounded scripts over finite datatype sorts:
// backtracking over the unknown points mentioned in the assertions, with
// three-valued pruning. Supports the subset the grounder emits; prints
// sat/unsat/unknown and, on request, the assignment as a model block.
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "rground/script.hpp"

using namespace rground;

namespace {

struct Point {
  const FuncSym* fn;
  std::vector<const Term*> args;

  bool operator<(const Point& o) const {
    if (fn != o.fn) return fn->name < o.fn->name;
    return args < o.args;
  }
};

void flatten_units(const Term* t, std::vector<const Term*>& out) {
  if (t->kind == Kind::And) {
    for (auto* k : t->kids) flatten_units(k, out);
  } else {
    out.push_back(t);
  }
}

void collect_points(const Term* t, const Structure& a, std::set<Point>& out) {
  if (t->kind == Kind::App && t->fn->builtin == FuncSym::Builtin::None) {
    bool ground_args = true;
    for (auto* k : t->kids)
      if (!k->is_id()) ground_args = false;
    if (ground_args && t->fn->result->finite()) {
      const Interp* in = a.find(t->fn);
      bool defined = false;
      if (in) {
        if (in->points.count(t->kids)) defined = true;
        else if (in->default_value && !in->unknown.count(t->kids)) defined = true;
      }
      if (!defined) out.insert(Point{t->fn, t->kids});
    }
  }
  for (auto* k : t->kids) collect_points(k, a, out);
}

void points_of_unit(const Term* t, const std::map<Point, size_t>& index, std::set<size_t>& out,
                    bool& undecidable) {
  switch (t->kind) {
    case Kind::App: {
      if (t->fn->builtin == FuncSym::Builtin::None) {
        bool ground_args = true;
        for (auto* k : t->kids)
          if (!k->is_id()) ground_args = false;
        if (!ground_args) undecidable = true;
        auto it = index.find(Point{t->fn, t->kids});
        if (it != index.end()) out.insert(it->second);
      }
      break;
    }
    case Kind::Forall:
    case Kind::Count:
      for (auto* b : t->binders)
        if (!b->sort->finite()) undecidable = true;
      break;
    default:
      break;
  }
  for (auto* k : t->kids) points_of_unit(k, index, out, undecidable);
}

class MiniSolver {
 public:
  MiniSolver(Script& script) : script_(script), store_(*script.store) {}

  std::string solve() {
    std::vector<const Term*> units;
    for (auto* t : script_.assertions()) flatten_units(t, units);

    std::set<Point> pointset;
    const Structure& a = script_.structure;
    for (auto* u : units) collect_points(u, a, pointset);
    points_.assign(pointset.begin(), pointset.end());
    std::map<Point, size_t> index;
    for (size_t i = 0; i < points_.size(); ++i) index[points_[i]] = i;

    triggers_.assign(points_.size(), {});
    current_ = a;
    for (auto* u : units) {
      std::set<size_t> deps;
      bool undecidable = false;
      points_of_unit(u, index, deps, undecidable);
      if (undecidable) {
        has_undecidable_ = true;
        continue;
      }
      if (deps.empty()) {
        // decidable immediately
        if (!holds(u)) return "unsat";
        continue;
      }
      triggers_[*deps.rbegin()].push_back(u);
    }
    int verdict = dfs(0);
    if (verdict == 1) return has_undecidable_ ? "unknown" : "sat";
    if (budget_ <= 0) return "unknown";
    return "unsat";
  }

  void print_model(std::ostream& os) const {
    os << "(model\n";
    for (size_t i = 0; i < points_.size(); ++i) {
      const Point& p = points_[i];
      os << "  (= ";
      if (p.args.empty()) {
        os << p.fn->name;
      } else {
        os << "(" << p.fn->name;
        for (auto* t : p.args) os << " " << to_smt(t);
        os << ")";
      }
      os << " " << to_smt(assignment_[i]) << ")\n";
    }
    os << ")\n";
  }

 private:
  bool holds(const Term* t) {
    try {
      return evaluate_closed(store_, current_, t) == store_.truth(true);
    } catch (const Error&) {
      has_undecidable_ = true;
      return true;  // cannot refute
    }
  }

  int dfs(size_t depth) {
    if (budget_-- <= 0) return 0;
    if (depth == points_.size()) return 1;
    const Point& p = points_[depth];
    Interp& in = current_.interps[p.fn];
    for (const Term* value : p.fn->result->ids) {
      in.points[p.args] = value;
      if (assignment_.size() <= depth) assignment_.resize(depth + 1);
      assignment_[depth] = value;
      bool ok = true;
      for (auto* u : triggers_[depth])
        if (!holds(u)) {
          ok = false;
          break;
        }
      if (ok) {
        int r = dfs(depth + 1);
        if (r != 0) return r;
        if (budget_ <= 0) return 0;
      }
    }
    in.points.erase(p.args);
    return -1;
  }

  Script& script_;
  TermStore& store_;
  Structure current_;
  std::vector<Point> points_;
  std::vector<const Term*> assignment_;
  std::vector<std::vector<const Term*>> triggers_;
  bool has_undecidable_ = false;
  long long budget_ = 50000000;
};

}  // namespace

int main(int argc, char** argv) {
  std::ostringstream buf;
  if (argc > 1) {
    std::ifstream in(argv[1]);
    if (!in) {
      std::cerr << "error: cannot open " << argv[1] << "\n";
      return 1;
    }
    buf << in.rdbuf();
  } else {
    buf << std::cin.rdbuf();
  }
  try {
    Script script = parse_script(buf.str());
    bool want_model = false;
    for (const auto& c : script.commands)
      if (c.type == Command::Type::GetModel) want_model = true;
    MiniSolver solver(script);
    std::string verdict = solver.solve();
    std::cout << verdict << "\n";
    if (verdict == "sat" && want_model) solver.print_model(std::cout);
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cout << "unknown\n";
    return 0;
  }
}
