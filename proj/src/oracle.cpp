#include "rground/oracle.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace rground {

namespace {

void occurring_symbols(const Term* t, std::set<const FuncSym*>& out) {
  if (t->kind == Kind::App && t->fn->builtin == FuncSym::Builtin::None) out.insert(t->fn);
  for (auto* k : t->kids) occurring_symbols(k, out);
}

struct FreePoint {
  const FuncSym* fn;
  std::vector<const Term*> args;
};

void enumerate_domain(const FuncSym* fn, size_t i, std::vector<const Term*>& acc,
                      std::vector<std::vector<const Term*>>& out) {
  if (i == fn->arg_sorts.size()) {
    out.push_back(acc);
    return;
  }
  for (const Term* id : fn->arg_sorts[i]->ids) {
    acc.push_back(id);
    enumerate_domain(fn, i + 1, acc, out);
    acc.pop_back();
  }
}

}  // namespace

BruteForceResult brute_force_satisfiable(TermStore& store, const Structure& partial,
                                         const std::vector<const Term*>& sentences,
                                         long long cap) {
  std::set<const FuncSym*> symbols;
  for (auto* t : sentences) occurring_symbols(t, symbols);

  std::vector<FreePoint> points;
  for (const FuncSym* fn : symbols) {
    const Interp* in = partial.find(fn);
    bool total = in && in->default_value && in->unknown.empty();
    if (total) continue;
    for (auto* s : fn->arg_sorts)
      if (!s->finite())
        fail(Err::SearchSpaceTooLarge,
             "cannot enumerate expansions of " + fn->name + " over infinite sort " + s->name);
    if (!fn->result->finite())
      fail(Err::SearchSpaceTooLarge,
           "cannot enumerate expansions of " + fn->name + " with infinite result sort");
    std::vector<std::vector<const Term*>> domain;
    std::vector<const Term*> acc;
    enumerate_domain(fn, 0, acc, domain);
    for (auto& args : domain) {
      if (in) {
        if (in->points.count(args)) continue;
        if (in->default_value && !in->unknown.count(args)) continue;
      }
      points.push_back(FreePoint{fn, std::move(args)});
    }
  }

  long long space = 1;
  for (const auto& p : points) {
    space *= static_cast<long long>(p.fn->result->ids.size());
    if (space > cap)
      fail(Err::SearchSpaceTooLarge,
           "expansion space exceeds the cap of " + std::to_string(cap));
  }

  std::vector<size_t> odometer(points.size(), 0);
  BruteForceResult res;
  while (true) {
    Structure total = partial;
    for (size_t i = 0; i < points.size(); ++i) {
      Interp& in = total.interps[points[i].fn];
      in.points[points[i].args] = points[i].fn->result->ids[odometer[i]];
      in.unknown.erase(points[i].args);
    }
    ++res.checked;
    bool ok = true;
    for (auto* t : sentences) {
      if (evaluate_closed(store, total, t) != store.truth(true)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      res.sat = true;
      res.witness = std::move(total);
      return res;
    }
    // advance
    size_t i = 0;
    for (; i < points.size(); ++i) {
      if (++odometer[i] < points[i].fn->result->ids.size()) break;
      odometer[i] = 0;
    }
    if (i == points.size()) break;
  }
  res.sat = false;
  return res;
}

BruteForceResult brute_force_script(Script& script, long long cap) {
  return brute_force_satisfiable(*script.store, script.structure, script.assertions(), cap);
}

// ---- generators ---------------------------------------------------------------

namespace {

std::string color_name(int i, int k) {
  static const char* rgb[] = {"red", "green", "blue"};
  if (k == 3) return rgb[i];
  return "col" + std::to_string(i + 1);
}

std::string coloring_script(const std::vector<std::pair<int, int>>& edges, int colors) {
  std::ostringstream os;
  os << "(declare-datatype Color (";
  for (int c = 0; c < colors; ++c) {
    if (c) os << " ";
    os << "(" << color_name(c, colors) << ")";
  }
  os << "))\n";
  os << "(declare-fun edge (Int Int) Bool)\n";
  os << "(x-interpret-pred edge (x-set";
  for (auto& [u, v] : edges) os << " (" << u << " " << v << ")";
  os << "))\n";
  os << "(declare-fun colorOf (Int) Color)\n";
  os << "(assert (forall ((x Int) (y Int))\n"
        "            (=> (edge x y)\n"
        "                (not (= (colorOf x) (colorOf y))))))\n";
  os << "(check-sat)\n(get-model)\n";
  return os.str();
}

}  // namespace

std::string gen_graph_coloring_path(int edges, int colors) {
  std::vector<std::pair<int, int>> es;
  for (int i = 1; i <= edges; ++i) es.emplace_back(i, i + 1);
  return coloring_script(es, colors);
}

std::string gen_graph_coloring(int nodes, int edges, int colors, unsigned seed) {
  if (nodes < 2) fail(Err::Io, "graph-coloring needs at least 2 nodes");
  std::mt19937 rng(seed);
  std::set<std::pair<int, int>> es;
  std::uniform_int_distribution<int> pick(1, nodes);
  long long possible = static_cast<long long>(nodes) * (nodes - 1);
  int want = static_cast<int>(std::min<long long>(edges, possible));
  while (static_cast<int>(es.size()) < want) {
    int u = pick(rng), v = pick(rng);
    if (u == v) continue;
    es.insert({u, v});
  }
  return coloring_script(std::vector<std::pair<int, int>>(es.begin(), es.end()), colors);
}

std::string gen_n_queens(int n) {
  std::ostringstream os;
  os << "(declare-datatype Col (";
  for (int i = 1; i <= n; ++i) {
    if (i > 1) os << " ";
    os << "(c" << i << ")";
  }
  os << "))\n";
  os << "(declare-fun row (Int) Bool)\n(x-interpret-pred row (x-set";
  for (int i = 1; i <= n; ++i) os << " (" << i << ")";
  os << "))\n";
  os << "(declare-fun colNum (Col) Int)\n(x-interpret-fun colNum (x-mapping";
  for (int i = 1; i <= n; ++i) os << " ((c" << i << ") " << i << ")";
  os << "))\n";
  os << "(declare-fun queen (Int) Col)\n";
  os << "(assert (forall ((i Int) (j Int))\n"
        "  (=> (and (row i) (row j) (< i j))\n"
        "      (and (not (= (queen i) (queen j)))\n"
        "           (not (= (- (colNum (queen i)) (colNum (queen j))) (- i j)))\n"
        "           (not (= (- (colNum (queen i)) (colNum (queen j))) (- j i)))))))\n";
  os << "(check-sat)\n(get-model)\n";
  return os.str();
}

std::string gen_pigeonhole(int pigeons, int holes) {
  std::ostringstream os;
  os << "(declare-datatype Pigeon (";
  for (int i = 1; i <= pigeons; ++i) {
    if (i > 1) os << " ";
    os << "(p" << i << ")";
  }
  os << "))\n(declare-datatype Hole (";
  for (int i = 1; i <= holes; ++i) {
    if (i > 1) os << " ";
    os << "(h" << i << ")";
  }
  os << "))\n";
  os << "(declare-fun holeOf (Pigeon) Hole)\n";
  os << "(assert (forall ((x Pigeon) (y Pigeon))\n"
        "  (=> (not (= x y)) (not (= (holeOf x) (holeOf y))))))\n";
  os << "(check-sat)\n(get-model)\n";
  return os.str();
}

std::string gen_common_item(int n) {
  std::ostringstream os;
  os << "(declare-fun inX (Int) Bool)\n(x-interpret-pred inX (x-set";
  for (int i = 0; i < n; ++i) os << " (" << i << ")";
  os << "))\n";
  os << "(declare-fun inY (Int) Bool)\n(x-interpret-pred inY (x-set";
  for (int i = n / 2; i < n / 2 + n; ++i) os << " (" << i << ")";
  os << "))\n";
  os << "(assert (> (x-count ((x Int)) (and (inX x) (inY x))) 0))\n";
  os << "(check-sat)\n";
  return os.str();
}

std::string generate_instance(const std::string& family, int size) {
  if (size < 1) fail(Err::Io, "instance size must be positive");
  if (family == "graph-coloring") {
    if (size == 2) return gen_graph_coloring_path(2, 3);
    return gen_graph_coloring(size, 2 * size, 3, static_cast<unsigned>(size));
  }
  if (family == "n-queens") return gen_n_queens(size);
  if (family == "pigeonhole") return gen_pigeonhole(size + 1, size);
  if (family == "common-item") return gen_common_item(size);
  fail(Err::Io, "unknown instance family: " + family);
}

}  // namespace rground
