#include "rground/simplify.hpp"

#include <unordered_set>

namespace rground {

namespace {

const Term* simp(TermStore& store, const Term* t);

const Term* simp_and(TermStore& store, const std::vector<const Term*>& kids) {
  std::vector<const Term*> flat;
  std::unordered_set<const Term*> seen;
  const Term* tt = store.truth(true);
  const Term* ff = store.truth(false);
  for (auto* k : kids) {
    if (k == ff) return ff;
    if (k == tt) continue;
    if (k->kind == Kind::And) {
      for (auto* g : k->kids) {  // children already flat and simplified
        if (g == ff) return ff;
        if (g == tt) continue;
        if (seen.insert(g).second) flat.push_back(g);
      }
    } else if (seen.insert(k).second) {
      flat.push_back(k);
    }
  }
  return store.conj(std::move(flat));
}

const Term* simp_not(TermStore& store, const Term* k) {
  if (k == store.truth(true)) return store.truth(false);
  if (k == store.truth(false)) return store.truth(true);
  if (k->kind == Kind::Not) return k->kids[0];
  return store.negation(k);
}

const Term* simp_cmp(TermStore& store, CmpOp op, const Term* l, const Term* r) {
  if (l->is_numeral() && r->is_numeral()) {
    int c = l->value->compare(*r->value);
    switch (op) {
      case CmpOp::Lt: return store.truth(c < 0);
      case CmpOp::Le: return store.truth(c <= 0);
      case CmpOp::Eq: return store.truth(c == 0);
      case CmpOp::Ge: return store.truth(c >= 0);
      case CmpOp::Gt: return store.truth(c > 0);
    }
  }
  if (op == CmpOp::Eq) {
    if (l == r) return store.truth(true);
    // distinct ids of the same sort denote distinct elements
    if (l->is_id() && r->is_id()) return store.truth(false);
  }
  return store.cmp(op, l, r);
}

const Term* simp_arith(TermStore& store, const FuncSym* fn, std::vector<const Term*> args) {
  const Term* folded = fold_builtin(store, fn, args);
  if (folded) return folded;
  switch (fn->builtin) {
    case FuncSym::Builtin::Add: {
      // fold the numeral summands, drop zeros, keep the rest
      Rational acc;
      std::vector<const Term*> rest;
      for (auto* a : args) {
        if (a->is_numeral()) acc = acc + *a->value;
        else rest.push_back(a);
      }
      std::vector<const Term*> out;
      if (!acc.is_zero()) out.push_back(store.numeral(acc, fn->result));
      for (auto* r : rest) out.push_back(r);
      if (out.empty()) return store.numeral(Rational(), fn->result);
      if (out.size() == 1) return out[0];
      return store.app(fn, std::move(out));
    }
    case FuncSym::Builtin::Mul: {
      Rational acc(BigInt(1));
      std::vector<const Term*> rest;
      for (auto* a : args) {
        if (a->is_numeral()) acc = acc * *a->value;
        else rest.push_back(a);
      }
      if (acc.is_zero()) return store.numeral(Rational(), fn->result);
      std::vector<const Term*> out;
      if (acc != Rational(BigInt(1))) out.push_back(store.numeral(acc, fn->result));
      for (auto* r : rest) out.push_back(r);
      if (out.empty()) return store.numeral(Rational(BigInt(1)), fn->result);
      if (out.size() == 1) return out[0];
      return store.app(fn, std::move(out));
    }
    case FuncSym::Builtin::Sub: {
      if (args.size() == 1) return store.app(fn, std::move(args));  // unary, non-numeral
      Rational sub;  // folded numeral subtrahends
      std::vector<const Term*> rest;
      for (size_t i = 1; i < args.size(); ++i) {
        if (args[i]->is_numeral()) sub = sub + *args[i]->value;
        else rest.push_back(args[i]);
      }
      std::vector<const Term*> out;
      if (args[0]->is_numeral()) {
        Rational head = *args[0]->value - sub;
        if (rest.empty()) return store.numeral(head, fn->result);
        out.push_back(store.numeral(head, fn->result));
      } else {
        out.push_back(args[0]);
        if (!sub.is_zero()) out.push_back(store.numeral(sub, fn->result));
      }
      for (auto* r : rest) out.push_back(r);
      if (out.size() == 1) return out[0];
      return store.app(fn, std::move(out));
    }
    default:
      return store.app(fn, std::move(args));
  }
}

const Term* simp(TermStore& store, const Term* t) {
  switch (t->kind) {
    case Kind::Ident:
    case Kind::Var:
      return t;
    case Kind::App: {
      std::vector<const Term*> kids;
      kids.reserve(t->kids.size());
      for (auto* k : t->kids) kids.push_back(simp(store, k));
      if (t->fn->variadic()) return simp_arith(store, t->fn, std::move(kids));
      return store.app(t->fn, std::move(kids));
    }
    case Kind::Not:
      return simp_not(store, simp(store, t->kids[0]));
    case Kind::And: {
      std::vector<const Term*> kids;
      kids.reserve(t->kids.size());
      for (auto* k : t->kids) kids.push_back(simp(store, k));
      return simp_and(store, kids);
    }
    case Kind::Cmp:
      return simp_cmp(store, t->op, simp(store, t->kids[0]), simp(store, t->kids[1]));
    case Kind::Ite: {
      const Term* c = simp(store, t->kids[0]);
      if (c == store.truth(true)) return simp(store, t->kids[1]);
      if (c == store.truth(false)) return simp(store, t->kids[2]);
      const Term* a = simp(store, t->kids[1]);
      const Term* b = simp(store, t->kids[2]);
      if (a == b) return a;
      return store.ite(c, a, b);
    }
    case Kind::Forall: {
      const Term* body = simp(store, t->kids[0]);
      // sorts are non-empty, so constant bodies decide the quantifier
      if (body == store.truth(true) || body == store.truth(false)) return body;
      return store.forall(t->binders, body);
    }
    case Kind::Count: {
      const Term* body = simp(store, t->kids[0]);
      if (body == store.truth(false)) return store.numeral(Rational(), store.int_sort());
      return store.count(t->binders, body);
    }
  }
  fail(Err::Internal, "unreachable");
}

}  // namespace

const Term* simplify(TermStore& store, const Term* t) { return simp(store, t); }

}  // namespace rground
