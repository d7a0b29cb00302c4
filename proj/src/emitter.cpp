#include "rground/emitter.hpp"

#include <set>
#include <sstream>

namespace rground {

namespace {

struct Referenced {
  std::set<const FuncSym*> funs;
  std::set<const Sort*> sorts;
};

void collect_refs(const Term* t, Referenced& out) {
  switch (t->kind) {
    case Kind::Ident:
      out.sorts.insert(t->sort);
      return;
    case Kind::Var:
      out.sorts.insert(t->sort);
      return;
    case Kind::App:
      if (t->fn->builtin == FuncSym::Builtin::None) {
        out.funs.insert(t->fn);
        for (auto* s : t->fn->arg_sorts) out.sorts.insert(s);
        out.sorts.insert(t->fn->result);
      }
      break;
    case Kind::Forall:
    case Kind::Count:
      for (auto* b : t->binders) out.sorts.insert(b->sort);
      break;
    default:
      break;
  }
  for (auto* k : t->kids) collect_refs(k, out);
}

// Binder variables introduced internally carry reserved names; the output
// gives them plain names unused anywhere else in the script.
const Term* rename_reserved(TermStore& store, const Term* t, std::set<std::string>& used,
                            int& counter, std::map<const Term*, const Term*>& env) {
  switch (t->kind) {
    case Kind::Ident:
      return t;
    case Kind::Var: {
      auto it = env.find(t);
      return it == env.end() ? t : it->second;
    }
    case Kind::Forall:
    case Kind::Count: {
      std::vector<const Term*> vars;
      std::vector<std::pair<const Term*, const Term*>> saved;
      for (auto* b : t->binders) {
        const Term* nb = b;
        if (TermStore::reserved_name(b->name)) {
          std::string name;
          do {
            name = "z" + std::to_string(++counter);
          } while (used.count(name));
          used.insert(name);
          nb = store.var(name, b->sort);
        }
        saved.emplace_back(b, env.count(b) ? env[b] : nullptr);
        env[b] = nb;
        vars.push_back(nb);
      }
      const Term* body = rename_reserved(store, t->kids[0], used, counter, env);
      for (auto& [b, old] : saved) {
        if (old) env[b] = old;
        else env.erase(b);
      }
      return t->kind == Kind::Forall ? store.forall(std::move(vars), body)
                                     : store.count(std::move(vars), body);
    }
    default: {
      std::vector<const Term*> kids;
      kids.reserve(t->kids.size());
      for (auto* k : t->kids) kids.push_back(rename_reserved(store, k, used, counter, env));
      switch (t->kind) {
        case Kind::App: return store.app(t->fn, std::move(kids));
        case Kind::Not: return store.negation(kids[0]);
        case Kind::And: return store.conj(std::move(kids));
        case Kind::Cmp: return store.cmp(t->op, kids[0], kids[1]);
        case Kind::Ite: return store.ite(kids[0], kids[1], kids[2]);
        default: fail(Err::Internal, "unreachable");
      }
    }
  }
}

std::string apply_text(const FuncSym* fn, const std::vector<const Term*>& args) {
  if (args.empty()) return fn->name;
  std::string out = "(" + fn->name;
  for (auto* a : args) out += " " + to_smt(a);
  return out + ")";
}

// The completion assertion for a closed-world predicate or a defaulted
// function: off the listed points the symbol takes the default.
std::string completion_assertion(const FuncSym* fn, const Interp& in) {
  std::ostringstream os;
  std::vector<std::string> vars;
  os << "(assert (forall (";
  for (size_t i = 0; i < fn->arg_sorts.size(); ++i) {
    std::string v = "v" + std::to_string(i + 1);
    vars.push_back(v);
    if (i) os << " ";
    os << "(" << v << " " << fn->arg_sorts[i]->name << ")";
  }
  os << ") ";
  auto tuple_case = [&](const std::vector<const Term*>& args) {
    std::string c;
    if (args.size() == 1) return "(= " + vars[0] + " " + to_smt(args[0]) + ")";
    c = "(and";
    for (size_t i = 0; i < args.size(); ++i) c += " (= " + vars[i] + " " + to_smt(args[i]) + ")";
    return c + ")";
  };
  std::vector<std::string> cases;
  for (const auto& [args, val] : in.points) cases.push_back(tuple_case(args));
  for (const auto& args : in.unknown) cases.push_back(tuple_case(args));
  std::string listed;
  if (cases.empty()) listed = "false";
  else if (cases.size() == 1) listed = cases[0];
  else {
    listed = "(or";
    for (const auto& c : cases) listed += " " + c;
    listed += ")";
  }
  std::string head = "(" + fn->name;
  for (const auto& v : vars) head += " " + v;
  head += ")";
  std::string dflt = fn->is_predicate() && in.default_value &&
                             in.default_value->name == "false"
                         ? "(not " + head + ")"
                         : "(= " + head + " " + to_smt(in.default_value) + ")";
  os << "(or " << listed << " " << dflt << ")";
  os << "))";
  return os.str();
}

}  // namespace

std::string emit(const Script& script, const std::vector<SentenceGrounding>& groundings) {
  TermStore& store = *script.store;
  const Term* tt = store.truth(true);

  // output assertions, with internal binder names replaced
  std::set<std::string> used;
  for (auto* fn : store.declared_funs()) used.insert(fn->name);
  for (const auto& c : script.commands)
    if (c.sort) used.insert(c.sort->name);
  std::vector<const Term*> asserts;
  {
    int counter = 0;
    for (const auto& g : groundings) {
      if (g.term == tt) continue;
      std::map<const Term*, const Term*> env;
      asserts.push_back(rename_reserved(store, g.term, used, counter, env));
    }
  }

  Referenced refs;
  for (auto* t : asserts) collect_refs(t, refs);

  std::ostringstream os;

  // leading passthrough commands (set-logic and friends)
  for (const auto& c : script.commands)
    if (c.type == Command::Type::Passthrough) os << c.text << "\n";

  // datatype declarations, in original order, for referenced sorts
  for (const auto& c : script.commands) {
    if (c.type != Command::Type::DeclareDatatype) continue;
    if (refs.sorts.count(c.sort)) os << c.text << "\n";
  }

  // symbol declarations, in original order, for referenced symbols
  for (const auto& c : script.commands) {
    if (c.type != Command::Type::DeclareConst && c.type != Command::Type::DeclareFun) continue;
    if (!refs.funs.count(c.fn)) continue;
    if (c.fn->arg_sorts.empty()) {
      os << "(declare-const " << c.fn->name << " " << c.fn->result->name << ")\n";
    } else {
      os << "(declare-fun " << c.fn->name << " (";
      for (size_t i = 0; i < c.fn->arg_sorts.size(); ++i) {
        if (i) os << " ";
        os << c.fn->arg_sorts[i]->name;
      }
      os << ") " << c.fn->result->name << ")\n";
    }
  }

  // interpretation assertions for referenced interpreted symbols
  for (const auto& c : script.commands) {
    if (c.type != Command::Type::XInterpretConst && c.type != Command::Type::XInterpretPred &&
        c.type != Command::Type::XInterpretFun)
      continue;
    if (!refs.funs.count(c.fn)) continue;
    const Interp* in = script.structure.find(c.fn);
    if (!in) continue;
    for (const auto& [args, val] : in->points)
      os << "(assert (= " << apply_text(c.fn, args) << " " << to_smt(val) << "))\n";
    if (in->default_value && !c.fn->arg_sorts.empty())
      os << completion_assertion(c.fn, *in) << "\n";
  }

  for (auto* t : asserts) os << "(assert " << to_smt(t) << ")\n";

  // trailer: remaining commands in original order
  for (const auto& c : script.commands) {
    switch (c.type) {
      case Command::Type::CheckSat:
      case Command::Type::GetModel:
      case Command::Type::Echo:
        os << c.text << "\n";
        break;
      default:
        break;
    }
  }
  return os.str();
}

}  // namespace rground
