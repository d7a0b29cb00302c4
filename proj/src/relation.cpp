#include "rground/relation.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "rground/simplify.hpp"

namespace rground {

// ---- expression builders -----------------------------------------------------

CompareExpr CompareExpr::truth() { return CompareExpr{}; }
CompareExpr CompareExpr::is_id(std::string attr) {
  CompareExpr e;
  e.kind = CKind::IsId;
  e.a = std::move(attr);
  return e;
}
CompareExpr CompareExpr::eq(std::string a, std::string b) {
  CompareExpr e;
  e.kind = CKind::EqAttr;
  e.a = std::move(a);
  e.b = std::move(b);
  return e;
}
CompareExpr CompareExpr::eq_lit(std::string a, const Term* lit) {
  CompareExpr e;
  e.kind = CKind::EqLit;
  e.a = std::move(a);
  e.lit = lit;
  return e;
}
CompareExpr CompareExpr::ord(CmpOp op, std::string a, std::string b) {
  CompareExpr e;
  e.kind = CKind::Ord;
  e.op = op;
  e.a = std::move(a);
  e.b = std::move(b);
  return e;
}
CompareExpr CompareExpr::negate(CompareExpr e0) {
  CompareExpr e;
  e.kind = CKind::Not;
  e.kids.push_back(std::move(e0));
  return e;
}
CompareExpr CompareExpr::conj(std::vector<CompareExpr> es) {
  CompareExpr e;
  e.kind = CKind::And;
  e.kids = std::move(es);
  return e;
}
CompareExpr CompareExpr::disj(std::vector<CompareExpr> es) {
  CompareExpr e;
  e.kind = CKind::Or;
  e.kids = std::move(es);
  return e;
}

ConstructExpr ConstructExpr::literal(const Term* t) {
  ConstructExpr e;
  e.kind = EKind::Lit;
  e.lit = t;
  return e;
}
ConstructExpr ConstructExpr::col(std::string attr) {
  ConstructExpr e;
  e.kind = EKind::Col;
  e.attr = std::move(attr);
  return e;
}
ConstructExpr ConstructExpr::coalesce(std::string attr, const Term* dflt) {
  ConstructExpr e;
  e.kind = EKind::Coalesce;
  e.attr = std::move(attr);
  e.lit = dflt;
  return e;
}
ConstructExpr ConstructExpr::negate(ConstructExpr e0) {
  ConstructExpr e;
  e.kind = EKind::Neg;
  e.kids.push_back(std::move(e0));
  return e;
}
ConstructExpr ConstructExpr::conj(std::vector<ConstructExpr> es) {
  ConstructExpr e;
  e.kind = EKind::And;
  e.kids = std::move(es);
  return e;
}
ConstructExpr ConstructExpr::disj(std::vector<ConstructExpr> es) {
  ConstructExpr e;
  e.kind = EKind::Or;
  e.kids = std::move(es);
  return e;
}
ConstructExpr ConstructExpr::cmp(CmpOp op, ConstructExpr a, ConstructExpr b) {
  ConstructExpr e;
  e.kind = EKind::Cmp;
  e.op = op;
  e.kids.push_back(std::move(a));
  e.kids.push_back(std::move(b));
  return e;
}
ConstructExpr ConstructExpr::sum(std::vector<ConstructExpr> es) {
  ConstructExpr e;
  e.kind = EKind::Sum;
  e.kids = std::move(es);
  return e;
}
ConstructExpr ConstructExpr::ite(ConstructExpr c, ConstructExpr a, ConstructExpr b) {
  ConstructExpr e;
  e.kind = EKind::Ite;
  e.kids.push_back(std::move(c));
  e.kids.push_back(std::move(a));
  e.kids.push_back(std::move(b));
  return e;
}

// ---- relation helpers ----------------------------------------------------------

bool Relation::has_attr(const std::string& a) const {
  return std::binary_search(attrs.begin(), attrs.end(), a);
}

size_t Relation::attr_index(const std::string& a) const {
  auto it = std::lower_bound(attrs.begin(), attrs.end(), a);
  if (it == attrs.end() || *it != a) fail(Err::UnknownAttribute, "unknown attribute " + a);
  return static_cast<size_t>(it - attrs.begin());
}

bool Relation::is_finite() const {
  if (finite()) return true;
  if (infinite_symbolic()) return false;  // normalized: vars have infinite sorts
  if (as_view().fn->builtin != FuncSym::Builtin::None) return false;  // variadic, numeric keys
  for (auto* s : as_view().fn->arg_sorts)
    if (!s->finite()) return false;
  return true;
}

namespace {

bool row_less(const Row& a, const Row& b) {
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    int c = term_compare(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return a.size() < b.size();
}

void sort_unique(std::vector<Row>& rows) {
  std::sort(rows.begin(), rows.end(), row_less);
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
}

struct RowHash {
  size_t operator()(const Row& r) const {
    size_t h = 1469598103934665603ULL;
    for (auto* t : r) h = (h ^ std::hash<const void*>{}(t)) * 1099511628211ULL;
    return h;
  }
};

using RowIndex = std::unordered_map<Row, std::vector<size_t>, RowHash>;

std::vector<std::string> sorted_attrs(std::vector<std::string> attrs) {
  std::sort(attrs.begin(), attrs.end());
  for (size_t i = 1; i < attrs.size(); ++i)
    if (attrs[i] == attrs[i - 1]) fail(Err::AttributeClash, "duplicate attribute " + attrs[i]);
  return attrs;
}

}  // namespace

Relation rel_empty(std::vector<std::string> attrs) {
  Relation r;
  r.attrs = sorted_attrs(std::move(attrs));
  r.body = FiniteRel{};
  return r;
}

Relation rel_unit() {
  Relation r;
  r.body = FiniteRel{{Row{}}};
  return r;
}

Relation rel_singleton(const std::string& attr, const Term* t) {
  Relation r;
  r.attrs = {attr};
  r.body = FiniteRel{{Row{t}}};
  return r;
}

Relation rel_finite(std::vector<std::string> attrs, std::vector<Row> rows) {
  std::vector<size_t> perm(attrs.size());
  for (size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end(),
            [&](size_t x, size_t y) { return attrs[x] < attrs[y]; });
  Relation r;
  r.attrs.reserve(attrs.size());
  for (size_t i : perm) r.attrs.push_back(attrs[i]);
  for (size_t i = 1; i < r.attrs.size(); ++i)
    if (r.attrs[i] == r.attrs[i - 1]) fail(Err::AttributeClash, "duplicate attribute " + r.attrs[i]);
  FiniteRel f;
  f.rows.reserve(rows.size());
  for (auto& row : rows) {
    if (row.size() != attrs.size()) fail(Err::SchemaMismatch, "row arity mismatch");
    Row out(row.size());
    for (size_t i = 0; i < row.size(); ++i) out[i] = row[perm[i]];
    f.rows.push_back(std::move(out));
  }
  sort_unique(f.rows);
  r.body = std::move(f);
  return r;
}

namespace {

// Cross product of the finite universes of the given variables, appended to
// the base rows.
void enumerate_vars(const std::vector<const Term*>& vars, size_t i, Row& acc,
                    std::vector<Row>& out) {
  if (i == vars.size()) {
    out.push_back(acc);
    return;
  }
  for (const Term* id : vars[i]->sort->ids) {
    acc.push_back(id);
    enumerate_vars(vars, i + 1, acc, out);
    acc.pop_back();
  }
}

// Resolution of a symbolic attribute to its defining root.
struct Root {
  enum class K { Var, FinCol, Const, UApp };
  K k;
  const Term* var = nullptr;
  size_t fin_idx = 0;
  const Term* lit = nullptr;
  const Deriv* uapp = nullptr;
};

Root resolve_attr(const InfRel& ir, const std::string& attr) {
  auto fit = std::lower_bound(ir.fin_attrs.begin(), ir.fin_attrs.end(), attr);
  if (fit != ir.fin_attrs.end() && *fit == attr) {
    Root r;
    r.k = Root::K::FinCol;
    r.fin_idx = static_cast<size_t>(fit - ir.fin_attrs.begin());
    return r;
  }
  for (auto* v : ir.vars)
    if (v->name == attr) {
      Root r;
      r.k = Root::K::Var;
      r.var = v;
      return r;
    }
  for (const auto& [name, d] : ir.derived) {
    if (name != attr) continue;
    switch (d.k) {
      case Deriv::K::Const: {
        Root r;
        r.k = Root::K::Const;
        r.lit = d.lit;
        return r;
      }
      case Deriv::K::Copy:
        return resolve_attr(ir, d.src);
      case Deriv::K::UApp: {
        Root r;
        r.k = Root::K::UApp;
        r.uapp = &d;
        return r;
      }
    }
  }
  fail(Err::UnknownAttribute, "unknown attribute " + attr);
}

// Value of an attribute for a concrete fin row; nullopt when it depends on a
// symbolic variable.
std::optional<const Term*> row_value(TermStore& store, const InfRel& ir, const std::string& attr,
                                     const Row& finrow) {
  Root r = resolve_attr(ir, attr);
  switch (r.k) {
    case Root::K::Var:
      return std::nullopt;
    case Root::K::FinCol:
      return finrow[r.fin_idx];
    case Root::K::Const:
      return r.lit;
    case Root::K::UApp: {
      std::vector<const Term*> args;
      for (const auto& a : r.uapp->args) {
        auto v = row_value(store, ir, a, finrow);
        if (!v) return std::nullopt;
        args.push_back(*v);
      }
      return store.app(r.uapp->fn, std::move(args));
    }
  }
  return std::nullopt;
}

// The fin part of an InfRel denotes a factor of a cross product: callers seed
// it with the single empty row for "no finite factor". An empty fin part
// denotes the empty relation and collapses here.
Relation mk_inf(TermStore& store, InfRel ir) {
  if (ir.fin_rows.empty()) {
    std::vector<std::string> attrs = ir.fin_attrs;
    for (auto* v : ir.vars) attrs.push_back(v->name);
    for (const auto& [name, d] : ir.derived) attrs.push_back(name);
    return rel_empty(std::move(attrs));
  }
  // pull finite-sorted variables into the fin part
  std::vector<const Term*> finite_vars, infinite_vars;
  for (auto* v : ir.vars)
    (v->sort->finite() ? finite_vars : infinite_vars).push_back(v);
  if (!finite_vars.empty()) {
    std::vector<Row> expansion;
    Row acc;
    enumerate_vars(finite_vars, 0, acc, expansion);
    std::vector<std::string> attrs = ir.fin_attrs;
    for (auto* v : finite_vars) attrs.push_back(v->name);
    std::vector<Row> rows;
    rows.reserve(ir.fin_rows.size() * expansion.size());
    for (const auto& base : ir.fin_rows)
      for (const auto& ext : expansion) {
        Row r = base;
        r.insert(r.end(), ext.begin(), ext.end());
        rows.push_back(std::move(r));
      }
    Relation fin = rel_finite(std::move(attrs), std::move(rows));
    ir.fin_attrs = fin.attrs;
    ir.fin_rows = fin.fin().rows;
    ir.vars = infinite_vars;
  }

  if (ir.vars.empty()) {
    // fully enumerable: fold derived columns into concrete rows
    std::vector<std::string> attrs = ir.fin_attrs;
    for (const auto& [name, d] : ir.derived) attrs.push_back(name);
    std::vector<Row> rows;
    rows.reserve(ir.fin_rows.size());
    for (const auto& base : ir.fin_rows) {
      Row r = base;
      for (const auto& [name, d] : ir.derived) {
        auto v = row_value(store, ir, name, base);
        if (!v) fail(Err::Internal, "unresolvable derived column " + name);
        r.push_back(simplify(store, *v));
      }
      rows.push_back(std::move(r));
    }
    return rel_finite(std::move(attrs), std::move(rows));
  }

  Relation r;
  std::vector<std::string> attrs = ir.fin_attrs;
  for (auto* v : ir.vars) attrs.push_back(v->name);
  for (const auto& [name, d] : ir.derived) attrs.push_back(name);
  r.attrs = sorted_attrs(std::move(attrs));
  r.body = std::move(ir);
  return r;
}

}  // namespace

Relation rel_all_valuations(TermStore& store, const std::vector<const Term*>& vars) {
  InfRel ir;
  ir.vars = vars;
  ir.fin_rows.push_back(Row{});  // unit finite factor
  ir.universal = true;
  return mk_inf(store, std::move(ir));
}

Relation rel_view(const FuncSym* fn, const Interp* interp, bool drop_false,
                  std::vector<std::string> key_attrs, std::string val_attr) {
  Relation r;
  ViewRel v;
  v.fn = fn;
  v.interp = interp;
  v.drop_false = drop_false;
  v.key_attrs = std::move(key_attrs);
  v.val_attr = std::move(val_attr);
  std::vector<std::string> attrs = v.key_attrs;
  attrs.push_back(v.val_attr);
  r.attrs = sorted_attrs(std::move(attrs));
  r.body = std::move(v);
  return r;
}

std::optional<const Term*> view_lookup(TermStore& store, const ViewRel& v, const Row& keys) {
  const Term* out = nullptr;
  if (v.fn->builtin != FuncSym::Builtin::None) {
    out = fold_builtin(store, v.fn, keys);
    if (!out) out = store.app(v.fn, keys);
  } else if (v.interp) {
    auto it = v.interp->points.find(keys);
    if (it != v.interp->points.end()) out = it->second;
    else if (v.interp->default_value && !v.interp->unknown.count(keys))
      out = v.interp->default_value;
    else out = store.app(v.fn, keys);
  } else {
    out = store.app(v.fn, keys);
  }
  if (v.drop_false && out == store.truth(false)) return std::nullopt;
  return out;
}

// ---- expression evaluation over concrete rows --------------------------------

namespace {

struct Env {
  const std::vector<std::string>* attrs;
  const Row* row;

  const Term* cell(const std::string& a) const {
    auto it = std::lower_bound(attrs->begin(), attrs->end(), a);
    if (it == attrs->end() || *it != a) fail(Err::UnknownAttribute, "unknown attribute " + a);
    return (*row)[static_cast<size_t>(it - attrs->begin())];
  }
};

bool eval_cmp(const CompareExpr& e, const Env& env) {
  switch (e.kind) {
    case CKind::True:
      return true;
    case CKind::IsId: {
      const Term* t = env.cell(e.a);
      return t != nullptr && t->is_id();
    }
    case CKind::EqAttr: {
      const Term* x = env.cell(e.a);
      const Term* y = env.cell(e.b);
      return x != nullptr && y != nullptr && x == y;
    }
    case CKind::EqLit: {
      const Term* x = env.cell(e.a);
      return x != nullptr && x == e.lit;
    }
    case CKind::Ord: {
      const Term* x = env.cell(e.a);
      const Term* y = env.cell(e.b);
      if (!x || !y || !x->is_numeral() || !y->is_numeral()) return false;
      int c = x->value->compare(*y->value);
      switch (e.op) {
        case CmpOp::Lt: return c < 0;
        case CmpOp::Le: return c <= 0;
        case CmpOp::Eq: return c == 0;
        case CmpOp::Ge: return c >= 0;
        case CmpOp::Gt: return c > 0;
      }
      return false;
    }
    case CKind::Not:
      return !eval_cmp(e.kids[0], env);
    case CKind::And:
      for (const auto& k : e.kids)
        if (!eval_cmp(k, env)) return false;
      return true;
    case CKind::Or:
      for (const auto& k : e.kids)
        if (eval_cmp(k, env)) return true;
      return false;
  }
  return false;
}

const Term* eval_construct_raw(TermStore& store, const ConstructExpr& e, const Env& env) {
  switch (e.kind) {
    case EKind::Lit:
      return e.lit;
    case EKind::Col: {
      const Term* t = env.cell(e.attr);
      if (!t) fail(Err::Internal, "construction over a Null cell in " + e.attr);
      return t;
    }
    case EKind::Coalesce: {
      const Term* t = env.cell(e.attr);
      return t ? t : e.lit;
    }
    case EKind::Neg:
      return store.negation(eval_construct_raw(store, e.kids[0], env));
    case EKind::And: {
      std::vector<const Term*> ts;
      for (const auto& k : e.kids) ts.push_back(eval_construct_raw(store, k, env));
      return store.conj(std::move(ts));
    }
    case EKind::Or: {
      std::vector<const Term*> ts;
      for (const auto& k : e.kids)
        ts.push_back(store.negation(eval_construct_raw(store, k, env)));
      return store.negation(store.conj(std::move(ts)));
    }
    case EKind::Cmp:
      return store.cmp(e.op, eval_construct_raw(store, e.kids[0], env),
                       eval_construct_raw(store, e.kids[1], env));
    case EKind::Sum: {
      std::vector<const Term*> ts;
      for (const auto& k : e.kids) ts.push_back(eval_construct_raw(store, k, env));
      if (ts.size() == 1) return ts[0];
      const FuncSym* add = store.builtin_arith(FuncSym::Builtin::Add, ts[0]->sort);
      return store.app(add, std::move(ts));
    }
    case EKind::Ite:
      return store.ite(eval_construct_raw(store, e.kids[0], env),
                       eval_construct_raw(store, e.kids[1], env),
                       eval_construct_raw(store, e.kids[2], env));
  }
  fail(Err::Internal, "unreachable");
}

const Term* construct_value(TermStore& store, const ConstructExpr& e, const Env& env) {
  return simplify(store, eval_construct_raw(store, e, env));
}

// ---- three-valued evaluation over symbolic relations --------------------------

enum class TV { F, T, Dep };

TV tv_not(TV v) { return v == TV::Dep ? TV::Dep : (v == TV::T ? TV::F : TV::T); }

// Symbolic value of an attribute: concrete term, variable, constructed
// application, or row-dependent (fin column without a row at hand).
struct SymVal {
  enum class K { Concrete, Var, UApp, RowDep } k = K::RowDep;
  const Term* term = nullptr;  // Concrete (may be Null) / Var node
  const Deriv* uapp = nullptr;
};

SymVal sym_value(TermStore& store, const InfRel& ir, const std::string& attr, const Row* finrow) {
  Root r = resolve_attr(ir, attr);
  SymVal v;
  switch (r.k) {
    case Root::K::Var:
      v.k = SymVal::K::Var;
      v.term = r.var;
      return v;
    case Root::K::Const:
      v.k = SymVal::K::Concrete;
      v.term = r.lit;
      return v;
    case Root::K::FinCol:
      if (!finrow) return v;  // RowDep
      v.k = SymVal::K::Concrete;
      v.term = (*finrow)[r.fin_idx];
      return v;
    case Root::K::UApp: {
      std::vector<const Term*> args;
      bool concrete = true;
      for (const auto& a : r.uapp->args) {
        SymVal av = sym_value(store, ir, a, finrow);
        if (av.k == SymVal::K::Concrete && av.term) args.push_back(av.term);
        else concrete = false;
      }
      if (concrete) {
        v.k = SymVal::K::Concrete;
        v.term = store.app(r.uapp->fn, std::move(args));
      } else {
        v.k = SymVal::K::UApp;
        v.uapp = r.uapp;
      }
      return v;
    }
  }
  return v;
}

// Syntactic equality of two symbolic values, three-valued.
TV sym_eq(TermStore& store, const InfRel& ir, const SymVal& x, const SymVal& y,
          const Row* finrow) {
  if (x.k == SymVal::K::RowDep || y.k == SymVal::K::RowDep) return TV::Dep;
  if (x.k == SymVal::K::Concrete && y.k == SymVal::K::Concrete) {
    if (!x.term || !y.term) return TV::F;  // comparisons with Null fail
    return x.term == y.term ? TV::T : TV::F;
  }
  if (x.k == SymVal::K::Var && y.k == SymVal::K::Var)
    return x.term == y.term ? TV::T : TV::Dep;
  if (x.k == SymVal::K::Var || y.k == SymVal::K::Var) {
    const SymVal& var = x.k == SymVal::K::Var ? x : y;
    const SymVal& other = x.k == SymVal::K::Var ? y : x;
    if (other.k == SymVal::K::UApp) return TV::F;  // ids never equal applications
    if (!other.term) return TV::F;
    if (other.term->is_id() && other.term->sort == var.term->sort) return TV::Dep;
    return TV::F;  // a variable only takes ids of its own sort
  }
  // UApp vs UApp / UApp vs Concrete
  auto arg_vals = [&](const SymVal& v) {
    std::vector<SymVal> out;
    for (const auto& a : v.uapp->args) out.push_back(sym_value(store, ir, a, finrow));
    return out;
  };
  if (x.k == SymVal::K::UApp && y.k == SymVal::K::UApp) {
    if (x.uapp->fn != y.uapp->fn) return TV::F;
    auto xs = arg_vals(x), ys = arg_vals(y);
    TV acc = TV::T;
    for (size_t i = 0; i < xs.size(); ++i) {
      TV c = sym_eq(store, ir, xs[i], ys[i], finrow);
      if (c == TV::F) return TV::F;
      if (c == TV::Dep) acc = TV::Dep;
    }
    return acc;
  }
  const SymVal& ua = x.k == SymVal::K::UApp ? x : y;
  const SymVal& co = x.k == SymVal::K::UApp ? y : x;
  if (!co.term) return TV::F;
  if (co.term->kind != Kind::App || co.term->fn != ua.uapp->fn) return TV::F;
  auto as = arg_vals(ua);
  TV acc = TV::T;
  for (size_t i = 0; i < as.size(); ++i) {
    SymVal carg;
    carg.k = SymVal::K::Concrete;
    carg.term = co.term->kids[i];
    TV c = sym_eq(store, ir, as[i], carg, finrow);
    if (c == TV::F) return TV::F;
    if (c == TV::Dep) acc = TV::Dep;
  }
  return acc;
}

TV eval3(TermStore& store, const InfRel& ir, const CompareExpr& e, const Row* finrow) {
  switch (e.kind) {
    case CKind::True:
      return TV::T;
    case CKind::IsId: {
      SymVal v = sym_value(store, ir, e.a, finrow);
      switch (v.k) {
        case SymVal::K::Var: return TV::T;  // variables range over ids
        case SymVal::K::UApp: return TV::F;
        case SymVal::K::Concrete: return (v.term && v.term->is_id()) ? TV::T : TV::F;
        case SymVal::K::RowDep: return TV::Dep;
      }
      return TV::Dep;
    }
    case CKind::EqAttr:
      return sym_eq(store, ir, sym_value(store, ir, e.a, finrow),
                    sym_value(store, ir, e.b, finrow), finrow);
    case CKind::EqLit: {
      SymVal lit;
      lit.k = SymVal::K::Concrete;
      lit.term = e.lit;
      return sym_eq(store, ir, sym_value(store, ir, e.a, finrow), lit, finrow);
    }
    case CKind::Ord: {
      SymVal x = sym_value(store, ir, e.a, finrow);
      SymVal y = sym_value(store, ir, e.b, finrow);
      if (x.k == SymVal::K::UApp || y.k == SymVal::K::UApp) return TV::F;
      if (x.k == SymVal::K::RowDep || y.k == SymVal::K::RowDep) return TV::Dep;
      if (x.k == SymVal::K::Concrete && y.k == SymVal::K::Concrete) {
        if (!x.term || !y.term || !x.term->is_numeral() || !y.term->is_numeral()) return TV::F;
        int c = x.term->value->compare(*y.term->value);
        switch (e.op) {
          case CmpOp::Lt: return c < 0 ? TV::T : TV::F;
          case CmpOp::Le: return c <= 0 ? TV::T : TV::F;
          case CmpOp::Eq: return c == 0 ? TV::T : TV::F;
          case CmpOp::Ge: return c >= 0 ? TV::T : TV::F;
          case CmpOp::Gt: return c > 0 ? TV::T : TV::F;
        }
        return TV::F;
      }
      if (x.k == SymVal::K::Var && y.k == SymVal::K::Var && x.term == y.term)
        return (e.op == CmpOp::Le || e.op == CmpOp::Ge || e.op == CmpOp::Eq) ? TV::T : TV::F;
      if (x.k == SymVal::K::Concrete && x.term && !x.term->is_numeral()) return TV::F;
      if (y.k == SymVal::K::Concrete && y.term && !y.term->is_numeral()) return TV::F;
      return TV::Dep;
    }
    case CKind::Not:
      return tv_not(eval3(store, ir, e.kids[0], finrow));
    case CKind::And: {
      TV acc = TV::T;
      for (const auto& k : e.kids) {
        TV v = eval3(store, ir, k, finrow);
        if (v == TV::F) return TV::F;
        if (v == TV::Dep) acc = TV::Dep;
      }
      return acc;
    }
    case CKind::Or: {
      TV acc = TV::F;
      for (const auto& k : e.kids) {
        TV v = eval3(store, ir, k, finrow);
        if (v == TV::T) return TV::T;
        if (v == TV::Dep) acc = TV::Dep;
      }
      return acc;
    }
  }
  return TV::Dep;
}

// Folds the uniformly-decided subexpressions away so that pins hidden behind
// decided disjuncts (as in the rho conditions) become extractable.
CompareExpr partial_eval(TermStore& store, const InfRel& ir, const CompareExpr& e) {
  auto truth_of = [](bool b) {
    return b ? CompareExpr::truth() : CompareExpr::negate(CompareExpr::truth());
  };
  switch (e.kind) {
    case CKind::Not: {
      CompareExpr k = partial_eval(store, ir, e.kids[0]);
      TV v = eval3(store, ir, k, nullptr);
      if (v != TV::Dep) return truth_of(v == TV::F);
      return CompareExpr::negate(std::move(k));
    }
    case CKind::And: {
      std::vector<CompareExpr> kids;
      for (const auto& k : e.kids) {
        CompareExpr p = partial_eval(store, ir, k);
        TV v = eval3(store, ir, p, nullptr);
        if (v == TV::F) return truth_of(false);
        if (v == TV::T) continue;
        kids.push_back(std::move(p));
      }
      if (kids.empty()) return truth_of(true);
      if (kids.size() == 1) return kids[0];
      return CompareExpr::conj(std::move(kids));
    }
    case CKind::Or: {
      std::vector<CompareExpr> kids;
      for (const auto& k : e.kids) {
        CompareExpr p = partial_eval(store, ir, k);
        TV v = eval3(store, ir, p, nullptr);
        if (v == TV::T) return truth_of(true);
        if (v == TV::F) continue;
        kids.push_back(std::move(p));
      }
      if (kids.empty()) return truth_of(false);
      if (kids.size() == 1) return kids[0];
      return CompareExpr::disj(std::move(kids));
    }
    default: {
      TV v = eval3(store, ir, e, nullptr);
      if (v != TV::Dep) return truth_of(v == TV::T);
      return e;
    }
  }
}

// Pins extracted from the top-level conjunction: variable = concrete id.
void collect_pins(TermStore& store, const InfRel& ir, const CompareExpr& e,
                  std::vector<std::pair<const Term*, const Term*>>& pins) {
  if (e.kind == CKind::And) {
    for (const auto& k : e.kids) collect_pins(store, ir, k, pins);
    return;
  }
  const Term* lit = nullptr;
  const Term* var = nullptr;
  if (e.kind == CKind::EqLit) {
    SymVal v = sym_value(store, ir, e.a, nullptr);
    if (v.k == SymVal::K::Var) {
      var = v.term;
      lit = e.lit;
    }
  } else if (e.kind == CKind::EqAttr) {
    SymVal x = sym_value(store, ir, e.a, nullptr);
    SymVal y = sym_value(store, ir, e.b, nullptr);
    if (x.k == SymVal::K::Var && y.k == SymVal::K::Concrete) {
      var = x.term;
      lit = y.term;
    } else if (y.k == SymVal::K::Var && x.k == SymVal::K::Concrete) {
      var = y.term;
      lit = x.term;
    }
  }
  if (var && lit && lit->is_id() && lit->sort == var->sort) pins.emplace_back(var, lit);
}

// Row pins: a conjunct equating a variable with a finite column pins the
// variable to a per-row value (a diagonal join).
void collect_row_pins(const InfRel& ir, const CompareExpr& e,
                      std::vector<std::pair<const Term*, size_t>>& pins) {
  if (e.kind == CKind::And) {
    for (const auto& k : e.kids) collect_row_pins(ir, k, pins);
    return;
  }
  if (e.kind != CKind::EqAttr) return;
  Root x = resolve_attr(ir, e.a);
  Root y = resolve_attr(ir, e.b);
  if (x.k == Root::K::Var && y.k == Root::K::FinCol) pins.emplace_back(x.var, y.fin_idx);
  else if (y.k == Root::K::Var && x.k == Root::K::FinCol) pins.emplace_back(y.var, x.fin_idx);
}

}  // namespace

// ---- select -------------------------------------------------------------------

Relation select(TermStore& store, const Relation& r, const CompareExpr& cond) {
  if (r.finite()) {
    FiniteRel out;
    for (const auto& row : r.fin().rows) {
      Env env{&r.attrs, &row};
      if (eval_cmp(cond, env)) out.rows.push_back(row);
    }
    Relation res;
    res.attrs = r.attrs;
    res.body = std::move(out);
    return res;
  }
  if (r.view()) fail(Err::SymbolicSelection, "selection on an interpretation view");

  const InfRel& ir = r.inf();
  CompareExpr folded = partial_eval(store, ir, cond);
  TV overall = eval3(store, ir, folded, nullptr);
  if (overall == TV::T) return r;
  if (overall == TV::F) return rel_empty(r.attrs);

  // try to pin variables via equalities in the top-level conjunction
  std::vector<std::pair<const Term*, const Term*>> pins;
  collect_pins(store, ir, folded, pins);
  if (!pins.empty()) {
    InfRel next = ir;
    next.universal = false;
    std::vector<const Term*> vars;
    for (auto* v : next.vars) {
      const Term* pinned = nullptr;
      for (auto& [pv, id] : pins)
        if (pv == v) pinned = id;
      if (pinned) {
        Deriv d;
        d.k = Deriv::K::Const;
        d.lit = pinned;
        next.derived.emplace_back(v->name, d);
      } else {
        vars.push_back(v);
      }
    }
    if (vars.size() != next.vars.size()) {
      next.vars = std::move(vars);
      return select(store, mk_inf(store, std::move(next)), cond);
    }
  }

  // selection over a disjunction distributes into a union of selections
  if (folded.kind == CKind::Or) {
    bool ok = true;
    Relation acc;
    bool first = true;
    for (const auto& k : folded.kids) {
      Relation part;
      try {
        part = select(store, r, k);
      } catch (const Error& e) {
        if (e.code() == Err::Internal) throw;
        ok = false;
        break;
      }
      if (first) {
        acc = std::move(part);
        first = false;
      } else {
        try {
          acc = union_rows(store, acc, part);
        } catch (const Error& e) {
          if (e.code() == Err::Internal) throw;
          ok = false;
          break;
        }
      }
    }
    if (ok) return acc;
  }

  // a variable equated with a finite column becomes a per-row column
  {
    std::vector<std::pair<const Term*, size_t>> row_pins;
    collect_row_pins(ir, folded, row_pins);
    if (!row_pins.empty()) {
      auto [var, col] = row_pins[0];
      InfRel next = ir;
      next.universal = false;
      next.vars.clear();
      for (auto* v : ir.vars)
        if (v != var) next.vars.push_back(v);
      std::vector<std::string> attrs = next.fin_attrs;
      attrs.push_back(var->name);
      std::vector<Row> rows;
      for (const auto& row : ir.fin_rows) {
        const Term* cell = row[col];
        if (!cell || !cell->is_id() || cell->sort != var->sort) continue;
        Row nr = row;
        nr.push_back(cell);
        rows.push_back(std::move(nr));
      }
      Relation finpart = rel_finite(std::move(attrs), std::move(rows));
      next.fin_attrs = finpart.attrs;
      next.fin_rows = finpart.fin().rows;
      return select(store, mk_inf(store, std::move(next)), cond);
    }
  }

  // per-row decidability over the fin part
  bool decidable = true;
  std::vector<Row> kept;
  for (const auto& row : ir.fin_rows) {
    TV v = eval3(store, ir, cond, &row);
    if (v == TV::Dep) {
      decidable = false;
      break;
    }
    if (v == TV::T) kept.push_back(row);
  }
  if (decidable) {
    InfRel next = ir;
    next.universal = false;
    next.fin_rows = std::move(kept);
    return mk_inf(store, std::move(next));
  }
  fail(Err::SymbolicSelection, "selection cannot finitize a symbolic relation");
}

// ---- cross products -------------------------------------------------------------

namespace {

// Splits theta into attribute-equality pairs (left attr, right attr) plus the
// residual conjuncts; only valid when theta is a conjunction of atoms.
bool split_theta(const CompareExpr& theta, const Relation& l, const Relation& r,
                 std::vector<std::pair<std::string, std::string>>& pairs,
                 std::vector<CompareExpr>& residual) {
  if (theta.kind == CKind::True) return true;
  if (theta.kind == CKind::And) {
    for (const auto& k : theta.kids)
      if (!split_theta(k, l, r, pairs, residual)) return false;
    return true;
  }
  if (theta.kind == CKind::EqAttr) {
    bool al = l.has_attr(theta.a), ar = r.has_attr(theta.a);
    bool bl = l.has_attr(theta.b), br = r.has_attr(theta.b);
    if (al && br) {
      pairs.emplace_back(theta.a, theta.b);
      return true;
    }
    if (ar && bl) {
      pairs.emplace_back(theta.b, theta.a);
      return true;
    }
  }
  if (theta.kind == CKind::Or || theta.kind == CKind::Not || theta.kind == CKind::EqAttr ||
      theta.kind == CKind::EqLit || theta.kind == CKind::Ord || theta.kind == CKind::IsId) {
    residual.push_back(theta);
    return true;
  }
  return false;
}

Row combine_row(const Relation& l, const Relation& r, const std::vector<std::string>& attrs,
                const Row& lrow, const Row& rrow) {
  Row out(attrs.size(), nullptr);
  for (size_t i = 0; i < attrs.size(); ++i) {
    if (l.has_attr(attrs[i])) out[i] = lrow[l.attr_index(attrs[i])];
    else out[i] = rrow[r.attr_index(attrs[i])];
  }
  return out;
}

std::vector<std::string> disjoint_union_attrs(const Relation& l, const Relation& r) {
  for (const auto& a : l.attrs)
    if (r.has_attr(a)) fail(Err::AttributeClash, "attribute " + a + " on both cross operands");
  std::vector<std::string> attrs = l.attrs;
  attrs.insert(attrs.end(), r.attrs.begin(), r.attrs.end());
  return sorted_attrs(std::move(attrs));
}

Relation cross_fin_fin(TermStore& store, const Relation& l, const Relation& r,
                       const CompareExpr& theta) {
  (void)store;
  auto attrs = disjoint_union_attrs(l, r);
  std::vector<std::pair<std::string, std::string>> pairs;
  std::vector<CompareExpr> residual;
  bool conjunctive = split_theta(theta, l, r, pairs, residual);
  FiniteRel out;
  if (conjunctive && !pairs.empty()) {
    RowIndex index;
    std::vector<size_t> ridx;
    for (auto& [la, ra] : pairs) ridx.push_back(r.attr_index(ra));
    for (size_t i = 0; i < r.fin().rows.size(); ++i) {
      Row key;
      for (size_t j : ridx) key.push_back(r.fin().rows[i][j]);
      index[key].push_back(i);
    }
    CompareExpr rest = CompareExpr::conj(residual);
    for (const auto& lrow : l.fin().rows) {
      Row key;
      bool ok = true;
      for (auto& [la, ra] : pairs) {
        const Term* cell = lrow[l.attr_index(la)];
        if (!cell) { ok = false; break; }  // Null never joins
        key.push_back(cell);
      }
      if (!ok) continue;
      auto it = index.find(key);
      if (it == index.end()) continue;
      for (size_t i : it->second) {
        Row row = combine_row(l, r, attrs, lrow, r.fin().rows[i]);
        Env env{&attrs, &row};
        if (eval_cmp(rest, env)) out.rows.push_back(std::move(row));
      }
    }
  } else {
    for (const auto& lrow : l.fin().rows)
      for (const auto& rrow : r.fin().rows) {
        Row row = combine_row(l, r, attrs, lrow, rrow);
        Env env{&attrs, &row};
        if (eval_cmp(theta, env)) out.rows.push_back(std::move(row));
      }
  }
  sort_unique(out.rows);
  Relation res;
  res.attrs = std::move(attrs);
  res.body = std::move(out);
  return res;
}

// left finite x view, keyed on all view key attributes.
Relation cross_fin_view(TermStore& store, const Relation& l, const Relation& r,
                        const CompareExpr& theta, bool outer) {
  const ViewRel& view = r.as_view();
  auto attrs = disjoint_union_attrs(l, r);
  std::vector<std::pair<std::string, std::string>> pairs;
  std::vector<CompareExpr> residual;
  if (!split_theta(theta, l, r, pairs, residual))
    fail(Err::SymbolicSelection, "non-conjunctive theta against an interpretation view");
  std::map<std::string, std::string> key_source;  // view key attr -> left attr
  for (auto& [la, ra] : pairs) key_source[ra] = la;
  for (const auto& k : view.key_attrs)
    if (!key_source.count(k))
      fail(Err::SymbolicSelection, "theta does not cover view key " + k);
  CompareExpr rest = CompareExpr::conj(residual);
  FiniteRel out;
  for (const auto& lrow : l.fin().rows) {
    Row keys;
    bool ok = true;
    for (const auto& k : view.key_attrs) {
      const Term* cell = lrow[l.attr_index(key_source[k])];
      if (!cell || !cell->is_id()) { ok = false; break; }
      keys.push_back(cell);
    }
    std::optional<const Term*> val;
    if (ok) val = view_lookup(store, view, keys);
    if (ok && val) {
      Row rrow(r.attrs.size(), nullptr);
      for (size_t i = 0; i < view.key_attrs.size(); ++i)
        rrow[r.attr_index(view.key_attrs[i])] = keys[i];
      rrow[r.attr_index(view.val_attr)] = *val;
      Row row = combine_row(l, r, attrs, lrow, rrow);
      Env env{&attrs, &row};
      if (eval_cmp(rest, env)) {
        out.rows.push_back(std::move(row));
        continue;
      }
    }
    if (outer) {
      Row rrow(r.attrs.size(), nullptr);  // Null padding
      out.rows.push_back(combine_row(l, r, attrs, lrow, rrow));
    }
  }
  sort_unique(out.rows);
  Relation res;
  res.attrs = std::move(attrs);
  res.body = std::move(out);
  return res;
}

// symbolic x finite, keyed: every theta pair pins a symbolic attribute to a
// finite-side column. The result keeps unpinned variables symbolic.
Relation cross_inf_fin(TermStore& store, const Relation& l, const Relation& r,
                       const CompareExpr& theta) {
  const InfRel& ir = l.inf();
  auto attrs = disjoint_union_attrs(l, r);
  std::vector<std::pair<std::string, std::string>> pairs;  // (inf attr, fin attr)
  std::vector<CompareExpr> residual;
  {
    std::vector<std::pair<std::string, std::string>> raw;
    if (!split_theta(theta, l, r, raw, residual))
      fail(Err::SymbolicSelection, "non-conjunctive theta against a symbolic relation");
    pairs = std::move(raw);
  }
  // classify pin targets
  struct Pin {
    const Term* var;
    std::string fin_attr;  // finite-side source
  };
  std::vector<Pin> var_pins;
  std::vector<std::pair<const Term*, std::string>> const_checks;   // lit == fin attr
  std::vector<std::pair<size_t, std::string>> fincol_checks;       // inf fin idx == fin attr
  for (auto& [ia, fa] : pairs) {
    Root root = resolve_attr(ir, ia);
    switch (root.k) {
      case Root::K::Var: var_pins.push_back({root.var, fa}); break;
      case Root::K::Const: const_checks.emplace_back(root.lit, fa); break;
      case Root::K::FinCol: fincol_checks.emplace_back(root.fin_idx, fa); break;
      case Root::K::UApp:
        fail(Err::SymbolicSelection, "cannot key a constructed column " + ia);
    }
  }
  std::set<const Term*> pinned;
  for (auto& p : var_pins) pinned.insert(p.var);
  std::vector<const Term*> vars_out;
  for (auto* v : ir.vars)
    if (!pinned.count(v)) vars_out.push_back(v);

  // which derived columns resolve once the pinned vars have values
  auto deriv_resolvable = [&](const std::string& name) {
    std::function<bool(const std::string&)> go = [&](const std::string& a) -> bool {
      Root root = resolve_attr(ir, a);
      switch (root.k) {
        case Root::K::Var: return pinned.count(root.var) > 0;
        case Root::K::Const:
        case Root::K::FinCol: return true;
        case Root::K::UApp: {
          for (const auto& arg : root.uapp->args)
            if (!go(arg)) return false;
          return true;
        }
      }
      return false;
    };
    return go(name);
  };
  std::vector<std::pair<std::string, Deriv>> derived_out;
  std::vector<std::string> resolvable;
  for (const auto& [name, d] : ir.derived) {
    if (deriv_resolvable(name)) resolvable.push_back(name);
    else derived_out.emplace_back(name, d);
  }
  if (!residual.empty() && !vars_out.empty())
    fail(Err::SymbolicSelection, "residual theta over unpinned symbolic variables");

  // output fin attrs: inf fin attrs + pinned var names + resolvable derived + all finite side
  std::vector<std::string> fin_attrs = ir.fin_attrs;
  for (auto* v : ir.vars)
    if (pinned.count(v)) fin_attrs.push_back(v->name);
  for (const auto& n : resolvable) fin_attrs.push_back(n);
  fin_attrs.insert(fin_attrs.end(), r.attrs.begin(), r.attrs.end());
  std::vector<size_t> order(fin_attrs.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;

  std::vector<Row> rows_out;
  for (const auto& irow : ir.fin_rows) {
    for (const auto& frow : r.fin().rows) {
      bool ok = true;
      // fin-col keys
      for (auto& [idx, fa] : fincol_checks)
        if (irow[idx] == nullptr || irow[idx] != frow[r.attr_index(fa)]) { ok = false; break; }
      if (!ok) continue;
      // const keys
      for (auto& [lit, fa] : const_checks)
        if (lit != frow[r.attr_index(fa)]) { ok = false; break; }
      if (!ok) continue;
      // variable pins: value must be an id of the variable's sort
      std::map<const Term*, const Term*> pinval;
      for (auto& p : var_pins) {
        const Term* cell = frow[r.attr_index(p.fin_attr)];
        if (!cell || !cell->is_id() || cell->sort != p.var->sort) { ok = false; break; }
        auto it = pinval.find(p.var);
        if (it != pinval.end() && it->second != cell) { ok = false; break; }
        pinval[p.var] = cell;
      }
      if (!ok) continue;
      // assemble: iterate fin_attrs in declared order
      Row out;
      out.reserve(fin_attrs.size());
      // helper резолюция with pins
      std::function<const Term*(const std::string&)> value_of =
          [&](const std::string& a) -> const Term* {
        Root root = resolve_attr(ir, a);
        switch (root.k) {
          case Root::K::Var: return pinval.at(root.var);
          case Root::K::Const: return root.lit;
          case Root::K::FinCol: return irow[root.fin_idx];
          case Root::K::UApp: {
            std::vector<const Term*> args;
            for (const auto& arg : root.uapp->args) args.push_back(value_of(arg));
            return simplify(store, store.app(root.uapp->fn, std::move(args)));
          }
        }
        return nullptr;
      };
      for (const auto& fa : ir.fin_attrs) out.push_back(irow[resolve_attr(ir, fa).fin_idx]);
      for (auto* v : ir.vars)
        if (pinned.count(v)) out.push_back(pinval.at(v));
      for (const auto& n : resolvable) out.push_back(value_of(n));
      for (size_t i = 0; i < r.attrs.size(); ++i) out.push_back(frow[i]);
      rows_out.push_back(std::move(out));
    }
  }

  Relation finpart = rel_finite(fin_attrs, std::move(rows_out));
  if (!residual.empty()) {
    CompareExpr rest = CompareExpr::conj(residual);
    finpart = select(store, finpart, rest);
  }
  InfRel out;
  out.vars = vars_out;
  out.fin_attrs = finpart.attrs;
  out.fin_rows = finpart.fin().rows;
  out.derived = derived_out;
  return mk_inf(store, std::move(out));
}

// symbolic x pure-constructor view: key columns copy their sources and the
// value column is the constructed application.
Relation cross_inf_view(TermStore& store, const Relation& l, const Relation& r,
                        const CompareExpr& theta) {
  const InfRel& ir = l.inf();
  const ViewRel& view = r.as_view();
  if (!view.pure_constructor())
    fail(Err::SymbolicSelection,
         "cross of a symbolic relation with an interpreted view of " + view.fn->name);
  std::vector<std::pair<std::string, std::string>> pairs;
  std::vector<CompareExpr> residual;
  if (!split_theta(theta, l, r, pairs, residual) || !residual.empty())
    fail(Err::SymbolicSelection, "non-keyed theta against an interpretation view");
  std::map<std::string, std::string> key_source;
  for (auto& [la, ra] : pairs) key_source[ra] = la;
  for (const auto& k : view.key_attrs)
    if (!key_source.count(k))
      fail(Err::SymbolicSelection, "theta does not cover view key " + k);
  InfRel out = ir;
  out.universal = false;
  std::vector<std::string> argsrc;
  for (const auto& k : view.key_attrs) {
    Deriv d;
    d.k = Deriv::K::Copy;
    d.src = key_source[k];
    out.derived.emplace_back(k, d);
    argsrc.push_back(key_source[k]);
  }
  Deriv val;
  val.k = Deriv::K::UApp;
  val.fn = view.fn;
  val.args = argsrc;
  out.derived.emplace_back(view.val_attr, val);
  return mk_inf(store, std::move(out));
}

}  // namespace

Relation theta_cross(TermStore& store, const Relation& l, const Relation& r,
                     const CompareExpr& theta) {
  if (l.view() && !r.view()) return theta_cross(store, r, l, theta);
  if (l.infinite_symbolic() && r.finite()) {
    if (r.fin().rows.empty()) return rel_empty(disjoint_union_attrs(l, r));
    return cross_inf_fin(store, l, r, theta);
  }
  if (l.finite() && r.infinite_symbolic()) {
    if (l.fin().rows.empty()) return rel_empty(disjoint_union_attrs(l, r));
    return cross_inf_fin(store, r, l, theta);
  }
  if (l.finite() && r.finite()) return cross_fin_fin(store, l, r, theta);
  if (l.finite() && r.view()) return cross_fin_view(store, l, r, theta, /*outer=*/false);
  if (l.infinite_symbolic() && r.view()) {
    if (!r.as_view().pure_constructor() && r.is_finite())
      return cross_inf_fin(store, l, materialize(store, r), theta);
    return cross_inf_view(store, l, r, theta);
  }
  fail(Err::SymbolicSelection, "unsupported cross product combination");
}

Relation cross(TermStore& store, const Relation& l, const Relation& r) {
  return theta_cross(store, l, r, CompareExpr::truth());
}

// ---- natural join ---------------------------------------------------------------

namespace {

std::vector<std::string> shared_attrs(const Relation& l, const Relation& r) {
  std::vector<std::string> s;
  for (const auto& a : l.attrs)
    if (r.has_attr(a)) s.push_back(a);
  return s;
}

Relation join_fin_fin(TermStore& store, const Relation& l, const Relation& r) {
  (void)store;
  auto shared = shared_attrs(l, r);
  std::vector<std::string> attrs = l.attrs;
  for (const auto& a : r.attrs)
    if (!l.has_attr(a)) attrs.push_back(a);
  attrs = sorted_attrs(std::move(attrs));

  RowIndex index;
  for (size_t i = 0; i < r.fin().rows.size(); ++i) {
    Row key;
    for (const auto& a : shared) key.push_back(r.fin().rows[i][r.attr_index(a)]);
    index[key].push_back(i);
  }
  FiniteRel out;
  for (const auto& lrow : l.fin().rows) {
    Row key;
    bool ok = true;
    for (const auto& a : shared) {
      const Term* c = lrow[l.attr_index(a)];
      if (!c) { ok = false; break; }  // Null never joins
      key.push_back(c);
    }
    if (!ok) continue;
    auto it = index.find(key);
    if (it == index.end()) continue;
    for (size_t i : it->second) {
      const Row& rrow = r.fin().rows[i];
      Row row(attrs.size());
      for (size_t j = 0; j < attrs.size(); ++j)
        row[j] = l.has_attr(attrs[j]) ? lrow[l.attr_index(attrs[j])]
                                      : rrow[r.attr_index(attrs[j])];
      out.rows.push_back(std::move(row));
    }
  }
  sort_unique(out.rows);
  Relation res;
  res.attrs = std::move(attrs);
  res.body = std::move(out);
  return res;
}

// finite join symbolic: shared variables pin per finite row and become finite
// columns; unpinned variables stay symbolic.
Relation join_fin_inf(TermStore& store, const Relation& fin, const Relation& sym) {
  const InfRel& ir = sym.inf();
  auto shared = shared_attrs(fin, sym);

  std::vector<std::pair<std::string, const Term*>> shared_vars;   // attr, var node
  std::vector<std::pair<std::string, size_t>> shared_fincols;     // attr, inf fin idx
  std::vector<std::pair<std::string, const Term*>> shared_consts; // attr, lit
  std::vector<std::string> shared_uapps;
  for (const auto& a : shared) {
    Root root = resolve_attr(ir, a);
    switch (root.k) {
      case Root::K::Var: shared_vars.emplace_back(a, root.var); break;
      case Root::K::FinCol: shared_fincols.emplace_back(a, root.fin_idx); break;
      case Root::K::Const: shared_consts.emplace_back(a, root.lit); break;
      case Root::K::UApp: shared_uapps.push_back(a); break;
    }
  }
  std::set<const Term*> pinned;
  for (auto& [a, v] : shared_vars) pinned.insert(v);

  auto deriv_resolvable = [&](const std::string& name) {
    std::function<bool(const std::string&)> go = [&](const std::string& x) -> bool {
      Root root = resolve_attr(ir, x);
      switch (root.k) {
        case Root::K::Var: return pinned.count(root.var) > 0;
        case Root::K::Const:
        case Root::K::FinCol: return true;
        case Root::K::UApp:
          for (const auto& arg : root.uapp->args)
            if (!go(arg)) return false;
          return true;
      }
      return false;
    };
    return go(name);
  };
  for (const auto& a : shared_uapps)
    if (!deriv_resolvable(a))
      fail(Err::SymbolicSelection, "join on constructed column " + a + " over symbolic variables");

  std::vector<const Term*> vars_out;
  for (auto* v : ir.vars)
    if (!pinned.count(v)) vars_out.push_back(v);
  std::vector<std::pair<std::string, Deriv>> derived_out;
  std::vector<std::string> resolvable;  // non-shared derived that become columns
  for (const auto& [name, d] : ir.derived) {
    bool is_shared = std::find(shared.begin(), shared.end(), name) != shared.end();
    if (is_shared) continue;  // checked or computed below
    if (deriv_resolvable(name)) resolvable.push_back(name);
    else derived_out.emplace_back(name, d);
  }

  // hash symbolic fin part by the shared fin columns
  RowIndex index;
  for (size_t i = 0; i < ir.fin_rows.size(); ++i) {
    Row key;
    for (auto& [a, idx] : shared_fincols) key.push_back(ir.fin_rows[i][idx]);
    index[key].push_back(i);
  }

  std::vector<std::string> fin_attrs = fin.attrs;  // includes shared var/const/uapp names
  for (const auto& a : ir.fin_attrs) {
    bool kept = std::find(shared.begin(), shared.end(), a) == shared.end();
    if (kept) fin_attrs.push_back(a);
  }
  for (const auto& n : resolvable) fin_attrs.push_back(n);

  std::vector<Row> rows_out;
  for (const auto& frow : fin.fin().rows) {
    bool ok = true;
    for (auto& [a, lit] : shared_consts)
      if (frow[fin.attr_index(a)] != lit) { ok = false; break; }
    if (!ok) continue;
    std::map<const Term*, const Term*> pinval;
    for (auto& [a, v] : shared_vars) {
      const Term* cell = frow[fin.attr_index(a)];
      if (!cell || !cell->is_id() || cell->sort != v->sort) { ok = false; break; }
      auto it = pinval.find(v);
      if (it != pinval.end() && it->second != cell) { ok = false; break; }
      pinval[v] = cell;
    }
    if (!ok) continue;
    Row key;
    for (auto& [a, idx] : shared_fincols) {
      const Term* cell = frow[fin.attr_index(a)];
      if (!cell) { ok = false; break; }
      key.push_back(cell);
    }
    if (!ok) continue;
    auto it = index.find(key);
    if (it == index.end()) continue;
    for (size_t i : it->second) {
      const Row& irow = ir.fin_rows[i];
      std::function<const Term*(const std::string&)> value_of =
          [&](const std::string& a) -> const Term* {
        Root root = resolve_attr(ir, a);
        switch (root.k) {
          case Root::K::Var: return pinval.at(root.var);
          case Root::K::Const: return root.lit;
          case Root::K::FinCol: return irow[root.fin_idx];
          case Root::K::UApp: {
            std::vector<const Term*> args;
            for (const auto& arg : root.uapp->args) args.push_back(value_of(arg));
            return simplify(store, store.app(root.uapp->fn, std::move(args)));
          }
        }
        return nullptr;
      };
      // shared constructed columns must agree with the finite side
      bool match = true;
      for (const auto& a : shared_uapps)
        if (value_of(a) != frow[fin.attr_index(a)]) { match = false; break; }
      if (!match) continue;
      Row out;
      out.reserve(fin_attrs.size());
      for (size_t j = 0; j < fin.attrs.size(); ++j) out.push_back(frow[j]);
      for (const auto& a : ir.fin_attrs)
        if (std::find(shared.begin(), shared.end(), a) == shared.end())
          out.push_back(irow[resolve_attr(ir, a).fin_idx]);
      for (const auto& n : resolvable) out.push_back(value_of(n));
      rows_out.push_back(std::move(out));
    }
  }

  Relation finpart = rel_finite(fin_attrs, std::move(rows_out));
  InfRel out;
  out.vars = vars_out;
  out.fin_attrs = finpart.attrs;
  out.fin_rows = finpart.fin().rows;
  out.derived = derived_out;
  return mk_inf(store, std::move(out));
}

Relation join_inf_inf(TermStore& store, const Relation& l, const Relation& r) {
  const InfRel& li = l.inf();
  const InfRel& ri = r.inf();
  auto shared = shared_attrs(l, r);

  // Shared attributes must be variables or finite columns on both sides.
  std::vector<std::string> shared_fin_fin;
  std::vector<std::pair<const Term*, const Term*>> merged_vars;  // (l var, r var)
  std::vector<std::pair<const Term*, std::string>> l_var_r_col;  // l var pinned by r col
  std::vector<std::pair<const Term*, std::string>> r_var_l_col;
  for (const auto& a : shared) {
    Root lr = resolve_attr(li, a);
    Root rr = resolve_attr(ri, a);
    if (lr.k == Root::K::Var && rr.k == Root::K::Var) {
      if (lr.var != rr.var)
        fail(Err::SchemaMismatch, "attribute " + a + " has different sorts in join operands");
      merged_vars.emplace_back(lr.var, rr.var);
    } else if (lr.k == Root::K::Var && rr.k == Root::K::FinCol) {
      l_var_r_col.emplace_back(lr.var, a);
    } else if (lr.k == Root::K::FinCol && rr.k == Root::K::Var) {
      r_var_l_col.emplace_back(rr.var, a);
    } else if (lr.k == Root::K::FinCol && rr.k == Root::K::FinCol) {
      shared_fin_fin.push_back(a);
    } else {
      fail(Err::SymbolicSelection, "join on derived column " + a + " of symbolic relations");
    }
  }
  // non-shared derived columns pass through; their roots survive the merge
  std::vector<std::pair<std::string, Deriv>> derived_out;
  for (const auto& [name, d] : li.derived) {
    if (std::find(shared.begin(), shared.end(), name) != shared.end())
      fail(Err::SymbolicSelection, "join on derived column " + name);
    derived_out.emplace_back(name, d);
  }
  for (const auto& [name, d] : ri.derived) {
    if (std::find(shared.begin(), shared.end(), name) != shared.end())
      fail(Err::SymbolicSelection, "join on derived column " + name);
    for (const auto& [n2, d2] : derived_out)
      if (n2 == name) fail(Err::AttributeClash, "derived column " + name + " on both operands");
    derived_out.emplace_back(name, d);
  }

  // Merge variable lists (r vars pinned by l columns become columns; same for l).
  std::set<const Term*> l_pinned, r_pinned;
  for (auto& [v, a] : l_var_r_col) l_pinned.insert(v);
  for (auto& [v, a] : r_var_l_col) r_pinned.insert(v);
  std::vector<const Term*> vars_out;
  std::set<const Term*> seen;
  for (auto* v : li.vars)
    if (!l_pinned.count(v) && seen.insert(v).second) vars_out.push_back(v);
  for (auto* v : ri.vars)
    if (!r_pinned.count(v) && seen.insert(v).second) vars_out.push_back(v);

  std::vector<std::string> fin_attrs = li.fin_attrs;
  for (auto& [v, a] : l_var_r_col) fin_attrs.push_back(v->name);
  for (const auto& a : ri.fin_attrs) {
    bool dup = std::find(fin_attrs.begin(), fin_attrs.end(), a) != fin_attrs.end();
    if (!dup) fin_attrs.push_back(a);
  }

  RowIndex index;
  for (size_t i = 0; i < ri.fin_rows.size(); ++i) {
    Row key;
    for (const auto& a : shared_fin_fin) key.push_back(ri.fin_rows[i][resolve_attr(ri, a).fin_idx]);
    index[key].push_back(i);
  }
  std::vector<Row> rows_out;
  for (const auto& lrow : li.fin_rows) {
    Row key;
    bool ok = true;
    for (const auto& a : shared_fin_fin) {
      const Term* c = lrow[resolve_attr(li, a).fin_idx];
      if (!c) { ok = false; break; }
      key.push_back(c);
    }
    if (!ok) continue;
    auto it = index.find(key);
    if (it == index.end()) continue;
    for (size_t i : it->second) {
      const Row& rrow = ri.fin_rows[i];
      // sort-membership checks for pinned variables
      bool match = true;
      for (auto& [v, a] : l_var_r_col) {
        const Term* cell = rrow[resolve_attr(ri, a).fin_idx];
        if (!cell || !cell->is_id() || cell->sort != v->sort) { match = false; break; }
      }
      if (!match) continue;
      for (auto& [v, a] : r_var_l_col) {
        const Term* cell = lrow[resolve_attr(li, a).fin_idx];
        if (!cell || !cell->is_id() || cell->sort != v->sort) { match = false; break; }
      }
      if (!match) continue;
      Row out;
      out.reserve(fin_attrs.size());
      for (const auto& a : fin_attrs) {
        auto lit = std::lower_bound(li.fin_attrs.begin(), li.fin_attrs.end(), a);
        if (lit != li.fin_attrs.end() && *lit == a) {
          out.push_back(lrow[static_cast<size_t>(lit - li.fin_attrs.begin())]);
          continue;
        }
        // l variable pinned by an r column, or an r column
        bool filled = false;
        for (auto& [v, an] : l_var_r_col)
          if (v->name == a) {
            out.push_back(rrow[resolve_attr(ri, an).fin_idx]);
            filled = true;
            break;
          }
        if (filled) continue;
        auto ritA = std::lower_bound(ri.fin_attrs.begin(), ri.fin_attrs.end(), a);
        if (ritA != ri.fin_attrs.end() && *ritA == a) {
          out.push_back(rrow[static_cast<size_t>(ritA - ri.fin_attrs.begin())]);
          continue;
        }
        fail(Err::Internal, "join column bookkeeping for " + a);
      }
      rows_out.push_back(std::move(out));
    }
  }

  Relation finpart = rel_finite(fin_attrs, std::move(rows_out));
  InfRel out;
  out.vars = vars_out;
  out.fin_attrs = finpart.attrs;
  out.fin_rows = finpart.fin().rows;
  out.derived = std::move(derived_out);
  out.universal = li.universal && ri.universal && out.derived.empty();
  return mk_inf(store, std::move(out));
}

}  // namespace

Relation natural_join(TermStore& store, const Relation& l, const Relation& r) {
  if (l.view() || r.view()) fail(Err::SymbolicSelection, "natural join with interpretation views");
  if (l.finite() && r.finite()) return join_fin_fin(store, l, r);
  if (l.finite() && r.infinite_symbolic()) return join_fin_inf(store, l, r);
  if (l.infinite_symbolic() && r.finite()) return join_fin_inf(store, r, l);
  return join_inf_inf(store, l, r);
}

Relation theta_natural_join(TermStore& store, const Relation& l, const Relation& r,
                            const CompareExpr& theta) {
  return select(store, natural_join(store, l, r), theta);
}

// ---- left outer join -------------------------------------------------------------

Relation left_outer_join(TermStore& store, const Relation& l, const Relation& r,
                         const CompareExpr& theta) {
  if (!l.finite()) fail(Err::InfiniteLeft, "left operand of a left outer join must be finite");
  if (r.view()) return cross_fin_view(store, l, r, theta, /*outer=*/true);
  if (!r.finite()) fail(Err::SymbolicSelection, "right operand must be finite or a view");
  auto attrs = disjoint_union_attrs(l, r);
  FiniteRel out;
  for (const auto& lrow : l.fin().rows) {
    bool any = false;
    for (const auto& rrow : r.fin().rows) {
      Row row = combine_row(l, r, attrs, lrow, rrow);
      Env env{&attrs, &row};
      if (eval_cmp(theta, env)) {
        out.rows.push_back(std::move(row));
        any = true;
      }
    }
    if (!any) {
      Row pad(r.attrs.size(), nullptr);
      out.rows.push_back(combine_row(l, r, attrs, lrow, pad));
    }
  }
  sort_unique(out.rows);
  Relation res;
  res.attrs = std::move(attrs);
  res.body = std::move(out);
  return res;
}

// ---- union ------------------------------------------------------------------------

Relation union_rows(TermStore& store, const Relation& l, const Relation& r) {
  (void)store;
  if (l.attrs != r.attrs)
    fail(Err::SchemaMismatch, "union requires identical attribute names");
  if (l.finite() && r.finite()) {
    FiniteRel out;
    out.rows = l.fin().rows;
    out.rows.insert(out.rows.end(), r.fin().rows.begin(), r.fin().rows.end());
    sort_unique(out.rows);
    Relation res;
    res.attrs = l.attrs;
    res.body = std::move(out);
    return res;
  }
  if (l.finite() && l.fin().rows.empty()) return r;
  if (r.finite() && r.fin().rows.empty()) return l;
  if (l.infinite_symbolic() && l.inf().universal) return l;
  if (r.infinite_symbolic() && r.inf().universal) return r;
  fail(Err::SymbolicSelection, "union of symbolic relations");
}

// ---- projections ------------------------------------------------------------------

Relation project(TermStore& store, const Relation& r, const std::vector<std::string>& keep) {
  auto keeps = sorted_attrs(keep);
  for (const auto& a : keeps) r.attr_index(a);  // validate

  if (r.finite()) {
    std::vector<size_t> idx;
    for (const auto& a : keeps) idx.push_back(r.attr_index(a));
    std::vector<Row> rows;
    rows.reserve(r.fin().rows.size());
    for (const auto& row : r.fin().rows) {
      Row out;
      out.reserve(idx.size());
      for (size_t i : idx) out.push_back(row[i]);
      rows.push_back(std::move(out));
    }
    return rel_finite(keeps, std::move(rows));
  }
  if (r.view()) fail(Err::SymbolicSelection, "projection of an interpretation view");

  const InfRel& ir = r.inf();
  auto kept = [&](const std::string& a) {
    return std::binary_search(keeps.begin(), keeps.end(), a);
  };
  InfRel out;
  out.universal = ir.universal;
  std::vector<std::string> fin_attrs;
  std::vector<size_t> fin_idx;
  for (size_t i = 0; i < ir.fin_attrs.size(); ++i)
    if (kept(ir.fin_attrs[i])) {
      fin_attrs.push_back(ir.fin_attrs[i]);
      fin_idx.push_back(i);
    }
  for (auto* v : ir.vars)
    if (kept(v->name)) out.vars.push_back(v);

  // kept derived columns either resolve against surviving roots or, when
  // row-computable, materialize into the fin part
  std::vector<std::string> materialized;
  for (const auto& [name, d] : ir.derived) {
    if (!kept(name)) continue;
    std::function<bool(const std::string&)> survives = [&](const std::string& a) -> bool {
      Root root = resolve_attr(ir, a);
      switch (root.k) {
        case Root::K::Const: return true;
        case Root::K::Var: return kept(root.var->name);
        case Root::K::FinCol: return kept(ir.fin_attrs[root.fin_idx]);
        case Root::K::UApp:
          for (const auto& arg : root.uapp->args)
            if (!survives(arg)) return false;
          return true;
      }
      return false;
    };
    std::function<bool(const std::string&)> row_computable = [&](const std::string& a) -> bool {
      Root root = resolve_attr(ir, a);
      switch (root.k) {
        case Root::K::Const:
        case Root::K::FinCol: return true;
        case Root::K::Var: return false;
        case Root::K::UApp:
          for (const auto& arg : root.uapp->args)
            if (!row_computable(arg)) return false;
          return true;
      }
      return false;
    };
    std::function<Deriv(const std::string&)> rewrite = [&](const std::string& a) -> Deriv {
      Root root = resolve_attr(ir, a);
      Deriv d2;
      switch (root.k) {
        case Root::K::Const:
          d2.k = Deriv::K::Const;
          d2.lit = root.lit;
          return d2;
        case Root::K::Var:
          d2.k = Deriv::K::Copy;
          d2.src = root.var->name;
          return d2;
        case Root::K::FinCol:
          d2.k = Deriv::K::Copy;
          d2.src = ir.fin_attrs[root.fin_idx];
          return d2;
        case Root::K::UApp: {
          d2.k = Deriv::K::UApp;
          d2.fn = root.uapp->fn;
          for (const auto& arg : root.uapp->args) {
            Root ar = resolve_attr(ir, arg);
            switch (ar.k) {
              case Root::K::Var: d2.args.push_back(ar.var->name); break;
              case Root::K::FinCol: d2.args.push_back(ir.fin_attrs[ar.fin_idx]); break;
              default:
                fail(Err::SymbolicSelection, "projection breaks constructed column " + name);
            }
          }
          return d2;
        }
      }
      return d2;
    };
    if (survives(name)) {
      out.derived.emplace_back(name, rewrite(name));
    } else if (row_computable(name)) {
      materialized.push_back(name);
    } else {
      fail(Err::SymbolicSelection,
           "projected column " + name + " depends on dropped symbolic attributes");
    }
  }

  std::vector<std::string> all_fin_attrs = fin_attrs;
  for (const auto& n : materialized) all_fin_attrs.push_back(n);
  std::vector<Row> fin_rows;
  fin_rows.reserve(ir.fin_rows.size());
  for (const auto& row : ir.fin_rows) {
    Row nr;
    nr.reserve(fin_idx.size() + materialized.size());
    for (size_t i : fin_idx) nr.push_back(row[i]);
    for (const auto& n : materialized) {
      auto val = row_value(store, ir, n, row);
      if (!val) fail(Err::Internal, "row-computable column failed to resolve: " + n);
      nr.push_back(simplify(store, *val));
    }
    fin_rows.push_back(std::move(nr));
  }
  {
    Relation tmp = rel_finite(all_fin_attrs, std::move(fin_rows));
    out.fin_attrs = tmp.attrs;
    out.fin_rows = tmp.fin().rows;
  }
  if (!out.derived.empty() || !materialized.empty()) out.universal = false;
  return mk_inf(store, std::move(out));
}

Relation project_extend(TermStore& store, const Relation& r, const std::vector<std::string>& keep,
                        const std::string& new_attr, const ConstructExpr& expr) {
  if (r.finite()) {
    std::vector<size_t> idx;
    auto keeps = keep;
    for (const auto& a : keeps) idx.push_back(r.attr_index(a));
    std::vector<std::string> attrs = keeps;
    attrs.push_back(new_attr);
    std::vector<Row> rows;
    rows.reserve(r.fin().rows.size());
    for (const auto& row : r.fin().rows) {
      Row out;
      out.reserve(idx.size() + 1);
      for (size_t i : idx) out.push_back(row[i]);
      Env env{&r.attrs, &row};
      out.push_back(construct_value(store, expr, env));
      rows.push_back(std::move(out));
    }
    return rel_finite(std::move(attrs), std::move(rows));
  }
  if (r.view()) fail(Err::SymbolicSelection, "projection of an interpretation view");

  const InfRel& ir = r.inf();
  InfRel tmp = ir;
  tmp.universal = false;
  Deriv d;
  if (expr.kind == EKind::Lit) {
    d.k = Deriv::K::Const;
    d.lit = expr.lit;
  } else if (expr.kind == EKind::Col) {
    d.k = Deriv::K::Copy;
    d.src = expr.attr;
  } else {
    fail(Err::SymbolicSelection, "complex construction over a symbolic relation");
  }
  tmp.derived.emplace_back(new_attr, d);
  Relation extended = mk_inf(store, std::move(tmp));
  std::vector<std::string> keeps = keep;
  keeps.push_back(new_attr);
  return project(store, extended, keeps);
}

Relation project_aggregate(TermStore& store, const Relation& r,
                           const std::vector<std::string>& group, const std::string& new_attr,
                           AggOp op, const ConstructExpr& expr) {
  if (!r.finite())
    fail(Err::InfiniteRelation, "aggregation requires a finite relation");
  std::vector<size_t> gidx;
  for (const auto& a : group) gidx.push_back(r.attr_index(a));

  std::unordered_map<Row, std::vector<const Term*>, RowHash> groups;
  std::vector<Row> order;  // first-seen group keys
  for (const auto& row : r.fin().rows) {
    Row key;
    key.reserve(gidx.size());
    for (size_t i : gidx) key.push_back(row[i]);
    Env env{&r.attrs, &row};
    auto [it, fresh] = groups.try_emplace(key);
    if (fresh) order.push_back(key);
    it->second.push_back(construct_value(store, expr, env));
  }

  std::vector<std::string> attrs = group;
  attrs.push_back(new_attr);
  std::vector<Row> rows;
  rows.reserve(order.size());
  for (const auto& key : order) {
    std::vector<const Term*>& terms = groups[key];
    std::sort(terms.begin(), terms.end(), TermPtrLess{});
    const Term* agg = nullptr;
    switch (op) {
      case AggOp::AndOp:
        agg = simplify(store, store.conj(terms));
        break;
      case AggOp::OrOp: {
        std::vector<const Term*> negs;
        negs.reserve(terms.size());
        for (auto* t : terms) negs.push_back(store.negation(t));
        agg = simplify(store, store.negation(store.conj(std::move(negs))));
        break;
      }
      case AggOp::Sum: {
        if (terms.size() == 1) {
          agg = terms[0];
        } else {
          agg = simplify(store,
                         store.app(store.builtin_arith(FuncSym::Builtin::Add, terms[0]->sort),
                                   terms));
        }
        break;
      }
    }
    Row out = key;
    out.push_back(agg);
    rows.push_back(std::move(out));
  }
  return rel_finite(std::move(attrs), std::move(rows));
}

// ---- functional dependency ---------------------------------------------------------

bool check_functional_dependency(const Relation& r, const std::vector<std::string>& from,
                                 const std::vector<std::string>& to) {
  if (!r.finite()) fail(Err::InfiniteRelation, "functional dependency check needs a finite relation");
  std::vector<size_t> fidx, tidx;
  for (const auto& a : from) fidx.push_back(r.attr_index(a));
  for (const auto& a : to) tidx.push_back(r.attr_index(a));
  std::unordered_map<Row, Row, RowHash> seen;
  for (const auto& row : r.fin().rows) {
    Row key, val;
    for (size_t i : fidx) key.push_back(row[i]);
    for (size_t i : tidx) val.push_back(row[i]);
    auto [it, fresh] = seen.try_emplace(key, val);
    if (!fresh && it->second != val) return false;
  }
  return true;
}

// ---- materialization ----------------------------------------------------------------

Relation materialize(TermStore& store, const Relation& r) {
  if (r.finite()) return r;
  if (r.infinite_symbolic())
    fail(Err::InfiniteRelation, "cannot materialize a symbolic-infinite relation");
  const ViewRel& v = r.as_view();
  if (v.fn->builtin != FuncSym::Builtin::None)
    fail(Err::InfiniteRelation, "cannot materialize a builtin interpretation");
  for (auto* s : v.fn->arg_sorts)
    if (!s->finite())
      fail(Err::InfiniteRelation, "cannot materialize the interpretation of " + v.fn->name +
                                      " over infinite sort " + s->name);
  std::vector<Row> keys;
  Row acc;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == v.fn->arg_sorts.size()) {
      keys.push_back(acc);
      return;
    }
    for (const Term* id : v.fn->arg_sorts[i]->ids) {
      acc.push_back(id);
      rec(i + 1);
      acc.pop_back();
    }
  };
  rec(0);
  std::vector<std::string> attrs = v.key_attrs;
  attrs.push_back(v.val_attr);
  std::vector<Row> rows;
  for (auto& key : keys) {
    auto val = view_lookup(store, v, key);
    if (!val) continue;
    Row row = key;
    row.push_back(*val);
    rows.push_back(std::move(row));
  }
  return rel_finite(std::move(attrs), std::move(rows));
}

// ---- debug dump -----------------------------------------------------------------------

std::string debug_dump(const Relation& r) {
  std::ostringstream os;
  for (size_t i = 0; i < r.attrs.size(); ++i) {
    if (i) os << "\t";
    os << r.attrs[i];
  }
  os << "\n";
  if (r.finite()) {
    for (const auto& row : r.fin().rows) {
      for (size_t i = 0; i < row.size(); ++i) {
        if (i) os << "\t";
        os << (row[i] ? to_smt(row[i]) : "NULL");
      }
      os << "\n";
    }
  } else if (r.infinite_symbolic()) {
    const InfRel& ir = r.inf();
    os << "<symbolic-infinite over";
    for (auto* v : ir.vars) os << " " << v->name << ":" << v->sort->name;
    os << "; " << ir.fin_rows.size() << " finite factor rows>\n";
  } else {
    os << "<interpretation view of " << r.as_view().fn->name << ">\n";
  }
  return os.str();
}

}  // namespace rground
