#include "rground/term.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace rground {

bool FuncSym::is_predicate() const { return result->kind == Sort::Kind::Bool; }

const char* cmp_op_text(CmpOp op) {
  switch (op) {
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Eq: return "=";
    case CmpOp::Ge: return ">=";
    case CmpOp::Gt: return ">";
  }
  return "?";
}

// ---- interning -------------------------------------------------------------

namespace {

size_t hash_combine(size_t seed, size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

size_t node_hash(const Term& t) {
  size_t h = std::hash<int>{}(static_cast<int>(t.kind));
  h = hash_combine(h, std::hash<const void*>{}(t.sort));
  h = hash_combine(h, std::hash<std::string>{}(t.name));
  if (t.value) h = hash_combine(h, std::hash<std::string>{}(t.value->str()));
  h = hash_combine(h, std::hash<const void*>{}(t.fn));
  h = hash_combine(h, std::hash<int>{}(static_cast<int>(t.op)));
  for (auto* b : t.binders) h = hash_combine(h, std::hash<const void*>{}(b));
  for (auto* k : t.kids) h = hash_combine(h, std::hash<const void*>{}(k));
  return h;
}

bool node_equal(const Term& a, const Term& b) {
  return a.kind == b.kind && a.sort == b.sort && a.name == b.name && a.fn == b.fn &&
         a.op == b.op && a.binders == b.binders && a.kids == b.kids &&
         a.value.has_value() == b.value.has_value() &&
         (!a.value || *a.value == *b.value);
}

int kind_rank(Kind k) { return static_cast<int>(k); }

}  // namespace

int term_compare(const Term* a, const Term* b) {
  if (a == b) return 0;
  if (a == nullptr) return -1;  // Null row cells sort first
  if (b == nullptr) return 1;
  if (kind_rank(a->kind) != kind_rank(b->kind)) return kind_rank(a->kind) < kind_rank(b->kind) ? -1 : 1;
  switch (a->kind) {
    case Kind::Ident: {
      bool an = a->is_numeral(), bn = b->is_numeral();
      if (an != bn) return an ? -1 : 1;  // numerals before named ids
      if (an) {
        int c = a->value->compare(*b->value);
        if (c != 0) return c;
      } else if (a->name != b->name) {
        return a->name < b->name ? -1 : 1;
      }
      if (a->sort->name != b->sort->name) return a->sort->name < b->sort->name ? -1 : 1;
      return 0;
    }
    case Kind::Var:
      if (a->name != b->name) return a->name < b->name ? -1 : 1;
      if (a->sort->name != b->sort->name) return a->sort->name < b->sort->name ? -1 : 1;
      return 0;
    default: break;
  }
  if (a->kind == Kind::App && a->fn != b->fn) {
    if (a->fn->name != b->fn->name) return a->fn->name < b->fn->name ? -1 : 1;
    if (a->fn->result->name != b->fn->result->name)
      return a->fn->result->name < b->fn->result->name ? -1 : 1;
  }
  if (a->kind == Kind::Cmp && a->op != b->op)
    return static_cast<int>(a->op) < static_cast<int>(b->op) ? -1 : 1;
  if (a->binders.size() != b->binders.size()) return a->binders.size() < b->binders.size() ? -1 : 1;
  for (size_t i = 0; i < a->binders.size(); ++i) {
    int c = term_compare(a->binders[i], b->binders[i]);
    if (c != 0) return c;
  }
  if (a->kids.size() != b->kids.size()) return a->kids.size() < b->kids.size() ? -1 : 1;
  for (size_t i = 0; i < a->kids.size(); ++i) {
    int c = term_compare(a->kids[i], b->kids[i]);
    if (c != 0) return c;
  }
  return 0;
}

// ---- printing --------------------------------------------------------------

namespace {

void print_term(std::ostream& os, const Term* t) {
  switch (t->kind) {
    case Kind::Ident:
      if (t->is_numeral()) {
        const Rational& v = *t->value;
        if (v.is_negative()) {
          os << "(- ";
          Rational pos = -v;
          if (pos.is_integer()) {
            os << pos.str();
          } else {
            std::string dec = pos.try_decimal();
            if (!dec.empty()) os << dec;
            else os << "(/ " << pos.num().str() << " " << pos.den().str() << ")";
          }
          os << ")";
        } else if (v.is_integer()) {
          os << v.str();
        } else {
          std::string dec = v.try_decimal();
          if (!dec.empty()) os << dec;
          else os << "(/ " << v.num().str() << " " << v.den().str() << ")";
        }
      } else {
        os << t->name;
      }
      return;
    case Kind::Var:
      os << t->name;
      return;
    case Kind::App:
      if (t->kids.empty()) {
        os << t->fn->name;
      } else {
        os << "(" << t->fn->name;
        for (auto* k : t->kids) { os << " "; print_term(os, k); }
        os << ")";
      }
      return;
    case Kind::Not:
      os << "(not ";
      print_term(os, t->kids[0]);
      os << ")";
      return;
    case Kind::And:
      os << "(and";
      for (auto* k : t->kids) { os << " "; print_term(os, k); }
      os << ")";
      return;
    case Kind::Cmp:
      os << "(" << cmp_op_text(t->op) << " ";
      print_term(os, t->kids[0]);
      os << " ";
      print_term(os, t->kids[1]);
      os << ")";
      return;
    case Kind::Ite:
      os << "(ite ";
      print_term(os, t->kids[0]);
      os << " ";
      print_term(os, t->kids[1]);
      os << " ";
      print_term(os, t->kids[2]);
      os << ")";
      return;
    case Kind::Forall:
    case Kind::Count:
      os << (t->kind == Kind::Forall ? "(forall (" : "(x-count (");
      for (size_t i = 0; i < t->binders.size(); ++i) {
        if (i) os << " ";
        os << "(" << t->binders[i]->name << " " << t->binders[i]->sort->name << ")";
      }
      os << ") ";
      print_term(os, t->kids[0]);
      os << ")";
      return;
  }
}

}  // namespace

std::string to_smt(const Term* t) {
  std::ostringstream os;
  print_term(os, t);
  return os.str();
}

// ---- store -----------------------------------------------------------------

TermStore::TermStore() {
  auto mk_sort = [&](const std::string& n, Sort::Kind k) {
    auto s = std::make_unique<Sort>();
    s->name = n;
    s->kind = k;
    Sort* raw = s.get();
    sorts_.push_back(std::move(s));
    sort_by_name_[n] = raw;
    return raw;
  };
  bool_ = mk_sort("Bool", Sort::Kind::Bool);
  int_ = mk_sort("Int", Sort::Kind::Int);
  real_ = mk_sort("Real", Sort::Kind::Real);
  tt_ = id("true", bool_);
  ff_ = id("false", bool_);
}

const Term* TermStore::intern(Term&& node) {
  size_t h = node_hash(node);
  auto& bucket = buckets_[h];
  for (const Term* t : bucket)
    if (node_equal(*t, node)) return t;
  arena_.push_back(std::make_unique<Term>(std::move(node)));
  const Term* t = arena_.back().get();
  bucket.push_back(t);
  return t;
}

const Sort* TermStore::declare_datatype(const std::string& name,
                                        const std::vector<std::string>& ctors) {
  if (sort_by_name_.count(name)) fail(Err::Sort, "sort already declared: " + name);
  if (ctors.empty()) fail(Err::Sort, "datatype " + name + " must declare at least one id");
  auto s = std::make_unique<Sort>();
  s->name = name;
  s->kind = Sort::Kind::Datatype;
  Sort* raw = s.get();
  sorts_.push_back(std::move(s));
  sort_by_name_[name] = raw;
  for (const auto& c : ctors) id(c, raw);
  return raw;
}

const Sort* TermStore::find_sort(const std::string& name) const {
  auto it = sort_by_name_.find(name);
  return it == sort_by_name_.end() ? nullptr : it->second;
}

const FuncSym* TermStore::declare_fun(const std::string& name, std::vector<const Sort*> args,
                                      const Sort* result) {
  if (fun_by_name_.count(name)) fail(Err::Sort, "symbol already declared: " + name);
  auto f = std::make_unique<FuncSym>();
  f->name = name;
  f->arg_sorts = std::move(args);
  f->result = result;
  const FuncSym* raw = f.get();
  funs_.push_back(std::move(f));
  fun_by_name_[name] = raw;
  fun_order_.push_back(raw);
  return raw;
}

const FuncSym* TermStore::find_fun(const std::string& name) const {
  auto it = fun_by_name_.find(name);
  return it == fun_by_name_.end() ? nullptr : it->second;
}

const FuncSym* TermStore::builtin_arith(FuncSym::Builtin b, const Sort* s) {
  if (!s->numeric()) fail(Err::Sort, "arithmetic requires a numeric sort, got " + s->name);
  auto key = std::make_pair(static_cast<int>(b), s);
  auto it = builtins_.find(key);
  if (it != builtins_.end()) return it->second;
  auto f = std::make_unique<FuncSym>();
  switch (b) {
    case FuncSym::Builtin::Add: f->name = "+"; break;
    case FuncSym::Builtin::Sub: f->name = "-"; break;
    case FuncSym::Builtin::Mul: f->name = "*"; break;
    default: fail(Err::Internal, "bad builtin");
  }
  f->result = s;
  f->builtin = b;
  const FuncSym* raw = f.get();
  funs_.push_back(std::move(f));
  builtins_[key] = raw;
  return raw;
}

const Term* TermStore::id(const std::string& name, const Sort* sort) {
  auto it = named_ids_.find(name);
  if (it != named_ids_.end()) {
    if (it->second->sort != sort) fail(Err::Sort, "id " + name + " already has a different sort");
    return it->second;
  }
  Term n;
  n.kind = Kind::Ident;
  n.sort = sort;
  n.name = name;
  const Term* t = intern(std::move(n));
  named_ids_[name] = t;
  const_cast<Sort*>(sort)->ids.push_back(t);
  return t;
}

const Term* TermStore::find_id(const std::string& name) const {
  auto it = named_ids_.find(name);
  return it == named_ids_.end() ? nullptr : it->second;
}

const Term* TermStore::numeral(const Rational& v, const Sort* sort) {
  if (!sort->numeric()) fail(Err::Sort, "numeral of non-numeric sort " + sort->name);
  if (sort->kind == Sort::Kind::Int && !v.is_integer())
    fail(Err::Sort, "non-integer literal of sort Int: " + v.str());
  Term n;
  n.kind = Kind::Ident;
  n.sort = sort;
  n.name = v.str();
  n.value = v;
  return intern(std::move(n));
}

const Term* TermStore::var(const std::string& name, const Sort* sort) {
  Term n;
  n.kind = Kind::Var;
  n.sort = sort;
  n.name = name;
  return intern(std::move(n));
}

const Term* TermStore::fresh_var(const Sort* sort) { return var(fresh_name("z"), sort); }

const Term* TermStore::app(const FuncSym* fn, std::vector<const Term*> args) {
  if (fn->variadic()) {
    if (args.empty()) fail(Err::Sort, "builtin " + fn->name + " needs arguments");
    for (auto* a : args)
      if (a->sort != fn->result)
        fail(Err::Sort, "argument sort mismatch for " + fn->name + ": " + a->sort->name);
    if (fn->builtin != FuncSym::Builtin::Sub && args.size() < 2)
      fail(Err::Sort, "builtin " + fn->name + " needs at least two arguments");
  } else {
    if (args.size() != fn->arg_sorts.size())
      fail(Err::Sort, "arity mismatch applying " + fn->name);
    for (size_t i = 0; i < args.size(); ++i)
      if (args[i]->sort != fn->arg_sorts[i])
        fail(Err::Sort, "argument " + std::to_string(i + 1) + " of " + fn->name + " expects " +
                            fn->arg_sorts[i]->name + ", got " + args[i]->sort->name);
  }
  Term n;
  n.kind = Kind::App;
  n.sort = fn->result;
  n.fn = fn;
  n.kids = std::move(args);
  return intern(std::move(n));
}

const Term* TermStore::negation(const Term* t) {
  if (!t->is_bool()) fail(Err::Sort, "not expects Bool");
  Term n;
  n.kind = Kind::Not;
  n.sort = bool_;
  n.kids = {t};
  return intern(std::move(n));
}

const Term* TermStore::conj(std::vector<const Term*> ts) {
  for (auto* t : ts)
    if (!t->is_bool()) fail(Err::Sort, "and expects Bool operands");
  if (ts.empty()) return tt_;
  if (ts.size() == 1) return ts[0];
  Term n;
  n.kind = Kind::And;
  n.sort = bool_;
  n.kids = std::move(ts);
  return intern(std::move(n));
}

const Term* TermStore::cmp(CmpOp op, const Term* a, const Term* b) {
  if (a->sort != b->sort)
    fail(Err::Sort, "comparison operands must share a sort: " + a->sort->name + " vs " +
                        b->sort->name);
  if (op != CmpOp::Eq && !a->sort->numeric())
    fail(Err::Sort, std::string(cmp_op_text(op)) + " requires a numeric sort");
  Term n;
  n.kind = Kind::Cmp;
  n.sort = bool_;
  n.op = op;
  n.kids = {a, b};
  return intern(std::move(n));
}

const Term* TermStore::ite(const Term* c, const Term* a, const Term* b) {
  if (!c->is_bool()) fail(Err::Sort, "ite condition must be Bool");
  if (a->sort != b->sort) fail(Err::Sort, "ite branches must share a sort");
  Term n;
  n.kind = Kind::Ite;
  n.sort = a->sort;
  n.kids = {c, a, b};
  return intern(std::move(n));
}

const Term* TermStore::forall(std::vector<const Term*> vars, const Term* body) {
  if (!body->is_bool()) fail(Err::Sort, "forall body must be Bool");
  if (vars.empty()) return body;
  Term n;
  n.kind = Kind::Forall;
  n.sort = bool_;
  n.binders = std::move(vars);
  n.kids = {body};
  return intern(std::move(n));
}

const Term* TermStore::count(std::vector<const Term*> vars, const Term* body) {
  if (!body->is_bool()) fail(Err::Sort, "x-count body must be Bool");
  if (vars.empty()) fail(Err::Sort, "x-count needs at least one bound variable");
  Term n;
  n.kind = Kind::Count;
  n.sort = int_;
  n.binders = std::move(vars);
  n.kids = {body};
  return intern(std::move(n));
}

// ---- evaluation ------------------------------------------------------------

void Valuation::bind(const Term* var, const Term* id) {
  if (id->sort != var->sort) fail(Err::Sort, "valuation binds " + var->name + " to wrong sort");
  bindings_.emplace_back(var, id);
}

const Term* Valuation::lookup(const Term* var) const {
  for (auto it = bindings_.rbegin(); it != bindings_.rend(); ++it)
    if (it->first == var) return it->second;
  return nullptr;
}

const Term* fold_builtin(TermStore& store, const FuncSym* fn,
                         const std::vector<const Term*>& args) {
  for (auto* a : args)
    if (!a->is_numeral()) return nullptr;
  Rational acc = *args[0]->value;
  switch (fn->builtin) {
    case FuncSym::Builtin::Add:
      for (size_t i = 1; i < args.size(); ++i) acc = acc + *args[i]->value;
      break;
    case FuncSym::Builtin::Sub:
      if (args.size() == 1) {
        acc = -acc;
      } else {
        for (size_t i = 1; i < args.size(); ++i) acc = acc - *args[i]->value;
      }
      break;
    case FuncSym::Builtin::Mul:
      for (size_t i = 1; i < args.size(); ++i) acc = acc * *args[i]->value;
      break;
    default:
      return nullptr;
  }
  return store.numeral(acc, fn->result);
}

namespace {

const Term* eval_rec(TermStore& store, const Structure& a, const Term* t, Valuation& val);

bool eval_bool(TermStore& store, const Structure& a, const Term* t, Valuation& val) {
  return eval_rec(store, a, t, val) == store.truth(true);
}

// Iterates all valuations of the binder variables, calling f for each.
void for_each_valuation(const std::vector<const Term*>& vars, size_t i, Valuation& val,
                        const std::function<void()>& f) {
  if (i == vars.size()) {
    f();
    return;
  }
  const Sort* s = vars[i]->sort;
  if (!s->finite())
    fail(Err::InfiniteEvaluation,
         "cannot enumerate infinite sort " + s->name + " for variable " + vars[i]->name);
  for (const Term* id : s->ids) {
    val.bind(vars[i], id);
    for_each_valuation(vars, i + 1, val, f);
    val.pop();
  }
}

const Term* eval_rec(TermStore& store, const Structure& a, const Term* t, Valuation& val) {
  switch (t->kind) {
    case Kind::Ident:
      return t;
    case Kind::Var: {
      const Term* v = val.lookup(t);
      if (!v) fail(Err::UnboundVariable, "unbound variable " + t->name);
      return v;
    }
    case Kind::App: {
      std::vector<const Term*> args;
      args.reserve(t->kids.size());
      for (auto* k : t->kids) args.push_back(eval_rec(store, a, k, val));
      if (t->fn->variadic()) {
        const Term* folded = fold_builtin(store, t->fn, args);
        if (!folded) fail(Err::Internal, "builtin arguments did not evaluate to numerals");
        return folded;
      }
      const Interp* in = a.find(t->fn);
      if (in) {
        auto it = in->points.find(args);
        if (it != in->points.end()) return it->second;
        if (in->default_value && !in->unknown.count(args)) return in->default_value;
      }
      fail(Err::MissingInterpretation,
           "structure is not total on " + t->fn->name + " at " + to_smt(store.app(t->fn, args)));
    }
    case Kind::Not:
      return store.truth(!eval_bool(store, a, t->kids[0], val));
    case Kind::And: {
      bool all = true;
      for (auto* k : t->kids) all = eval_bool(store, a, k, val) && all;
      return store.truth(all);
    }
    case Kind::Cmp: {
      const Term* l = eval_rec(store, a, t->kids[0], val);
      const Term* r = eval_rec(store, a, t->kids[1], val);
      if (t->op == CmpOp::Eq) return store.truth(l == r);
      int c = l->value->compare(*r->value);
      switch (t->op) {
        case CmpOp::Lt: return store.truth(c < 0);
        case CmpOp::Le: return store.truth(c <= 0);
        case CmpOp::Ge: return store.truth(c >= 0);
        case CmpOp::Gt: return store.truth(c > 0);
        default: break;
      }
      fail(Err::Internal, "unreachable");
    }
    case Kind::Ite:
      return eval_bool(store, a, t->kids[0], val) ? eval_rec(store, a, t->kids[1], val)
                                                  : eval_rec(store, a, t->kids[2], val);
    case Kind::Forall: {
      bool all = true;
      for_each_valuation(t->binders, 0, val, [&] {
        if (!eval_bool(store, a, t->kids[0], val)) all = false;
      });
      return store.truth(all);
    }
    case Kind::Count: {
      long long n = 0;
      for_each_valuation(t->binders, 0, val, [&] {
        if (eval_bool(store, a, t->kids[0], val)) ++n;
      });
      return store.numeral(Rational(BigInt(n)), store.int_sort());
    }
  }
  fail(Err::Internal, "unreachable");
}

}  // namespace

const Term* evaluate(TermStore& store, const Structure& a, const Term* t, Valuation& val) {
  return eval_rec(store, a, t, val);
}

const Term* evaluate_closed(TermStore& store, const Structure& a, const Term* t) {
  Valuation empty;
  return eval_rec(store, a, t, empty);
}

// ---- free variables --------------------------------------------------------

namespace {

void free_vars_rec(const Term* t, std::vector<const Term*>& out, std::vector<const Term*>& bound) {
  switch (t->kind) {
    case Kind::Ident:
      return;
    case Kind::Var:
      for (auto* b : bound)
        if (b == t) return;
      for (auto* o : out)
        if (o == t) return;
      out.push_back(t);
      return;
    case Kind::Forall:
    case Kind::Count: {
      size_t mark = bound.size();
      for (auto* b : t->binders) bound.push_back(b);
      free_vars_rec(t->kids[0], out, bound);
      bound.resize(mark);
      return;
    }
    default:
      for (auto* k : t->kids) free_vars_rec(k, out, bound);
      return;
  }
}

}  // namespace

std::vector<const Term*> free_variables(const Term* t) {
  std::vector<const Term*> out, bound;
  free_vars_rec(t, out, bound);
  return out;
}

// ---- substitution ----------------------------------------------------------

const Term* substitute(TermStore& store, const Term* t,
                       const std::map<const Term*, const Term*>& m) {
  switch (t->kind) {
    case Kind::Ident:
      return t;
    case Kind::Var: {
      auto it = m.find(t);
      return it == m.end() ? t : it->second;
    }
    case Kind::Forall:
    case Kind::Count: {
      std::map<const Term*, const Term*> inner = m;
      for (auto* b : t->binders) inner.erase(b);
      const Term* body = substitute(store, t->kids[0], inner);
      if (body == t->kids[0]) return t;
      return t->kind == Kind::Forall ? store.forall(t->binders, body)
                                     : store.count(t->binders, body);
    }
    default: {
      std::vector<const Term*> kids;
      kids.reserve(t->kids.size());
      bool changed = false;
      for (auto* k : t->kids) {
        const Term* nk = substitute(store, k, m);
        changed |= (nk != k);
        kids.push_back(nk);
      }
      if (!changed) return t;
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

// ---- shadow renaming -------------------------------------------------------

namespace {

const Term* rename_rec(TermStore& store, const Term* t, std::set<std::string>& used,
                       std::map<const Term*, const Term*>& env) {
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
        if (used.count(b->name)) {
          nb = store.fresh_var(b->sort);
        }
        used.insert(nb->name);
        saved.emplace_back(b, env.count(b) ? env[b] : nullptr);
        env[b] = nb;
        vars.push_back(nb);
      }
      const Term* body = rename_rec(store, t->kids[0], used, env);
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
      for (auto* k : t->kids) kids.push_back(rename_rec(store, k, used, env));
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

}  // namespace

const Term* rename_shadowed(TermStore& store, const Term* t) {
  return rename_shadowed(store, t, {});
}

const Term* rename_shadowed(TermStore& store, const Term* t,
                            const std::set<std::string>& extra_used) {
  std::set<std::string> used = extra_used;
  for (auto* v : free_variables(t)) used.insert(v->name);
  std::map<const Term*, const Term*> env;
  return rename_rec(store, t, used, env);
}

// ---- unnesting -------------------------------------------------------------

namespace {

struct Lift {
  std::vector<const Term*> fresh_vars;
  std::vector<const Term*> constraints;  // z = u equalities
};

const Term* unnest_rec(TermStore& store, const Term* t);

// Replaces each composite App argument u by a fresh variable z with a
// collected constraint z = u (u itself made simple first).
const Term* lift_one(TermStore& store, const Term* u, Lift& lift);

const Term* lift_args(TermStore& store, const Term* t, Lift& lift) {
  std::vector<const Term*> args;
  args.reserve(t->kids.size());
  for (auto* k : t->kids) args.push_back(lift_one(store, k, lift));
  return store.app(t->fn, std::move(args));
}

const Term* lift_one(TermStore& store, const Term* u, Lift& lift) {
  if (u->kind == Kind::Ident || u->kind == Kind::Var) return u;
  const Term* simple =
      (u->kind == Kind::App) ? lift_args(store, u, lift) : unnest_rec(store, u);
  const Term* z = store.fresh_var(u->sort);
  lift.fresh_vars.push_back(z);
  lift.constraints.push_back(store.cmp(CmpOp::Eq, z, simple));
  return z;
}

// An atom is a boolean leaf of the connective structure: a predicate
// application or a comparison. Its nested arguments are lifted here.
const Term* unnest_atom(TermStore& store, const Term* t) {
  Lift lift;
  const Term* simple = nullptr;
  if (t->kind == Kind::App) {
    simple = lift_args(store, t, lift);
  } else {  // Cmp: operands may be applications or composite boolean terms
    auto operand = [&](const Term* u) -> const Term* {
      if (u->kind == Kind::App) return lift_args(store, u, lift);
      if (u->kind == Kind::Ident || u->kind == Kind::Var) return u;
      return unnest_rec(store, u);
    };
    simple = store.cmp(t->op, operand(t->kids[0]), operand(t->kids[1]));
  }
  if (lift.constraints.empty()) return simple;
  // forall z: not (z = u and not atom)   ==   (z = u) => atom
  std::vector<const Term*> conjuncts = lift.constraints;
  conjuncts.push_back(store.negation(simple));
  return store.forall(lift.fresh_vars, store.negation(store.conj(std::move(conjuncts))));
}

const Term* unnest_rec(TermStore& store, const Term* t) {
  switch (t->kind) {
    case Kind::Ident:
    case Kind::Var:
      return t;
    case Kind::Not:
      return store.negation(unnest_rec(store, t->kids[0]));
    case Kind::And: {
      std::vector<const Term*> kids;
      for (auto* k : t->kids) kids.push_back(unnest_rec(store, k));
      return store.conj(std::move(kids));
    }
    case Kind::Ite: {
      if (!t->is_bool())
        fail(Err::NonBooleanNestingContext, "non-boolean ite outside an atom: " + to_smt(t));
      return store.ite(unnest_rec(store, t->kids[0]), unnest_rec(store, t->kids[1]),
                       unnest_rec(store, t->kids[2]));
    }
    case Kind::Forall:
      return store.forall(t->binders, unnest_rec(store, t->kids[0]));
    case Kind::Count:
      return store.count(t->binders, unnest_rec(store, t->kids[0]));
    case Kind::App:
      if (!t->is_bool())
        fail(Err::NonBooleanNestingContext, "non-boolean term outside an atom: " + to_smt(t));
      return unnest_atom(store, t);
    case Kind::Cmp:
      return unnest_atom(store, t);
  }
  fail(Err::Internal, "unreachable");
}

}  // namespace

const Term* unnest(TermStore& store, const Term* t) {
  if (!t->is_bool()) fail(Err::NonBooleanNestingContext, "unnest expects a boolean term");
  return unnest_rec(store, t);
}

bool is_simple_form(const Term* t) {
  switch (t->kind) {
    case Kind::Ident:
    case Kind::Var:
      return true;
    case Kind::App:
      for (auto* k : t->kids)
        if (k->kind != Kind::Ident && k->kind != Kind::Var) return false;
      return true;
    default:
      for (auto* k : t->kids)
        if (!is_simple_form(k)) return false;
      return true;
  }
}

}  // namespace rground
