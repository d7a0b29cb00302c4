#include "rground/grounder.hpp"

#include <algorithm>
#include <set>

#include "rground/simplify.hpp"

namespace rground {

const char* grounding_kind_text(GroundingKind k) {
  switch (k) {
    case GroundingKind::G: return "G";
    case GroundingKind::TU: return "TU";
    case GroundingKind::UF: return "UF";
  }
  return "?";
}

namespace {

std::vector<std::string> free_var_names(const Term* t) {
  std::vector<std::string> names;
  for (auto* v : free_variables(t)) names.push_back(v->name);
  return names;
}

void require_covers(const Relation& v, const Term* t) {
  for (auto* x : free_variables(t))
    if (!v.has_attr(x->name))
      fail(Err::Internal, "valuation relation misses variable " + x->name);
}

}  // namespace

std::string Grounder::gnd_attr_for(const Term* t) {
  auto it = node_index_.find(t);
  int idx;
  if (it == node_index_.end()) {
    idx = next_index_++;
    node_index_[t] = idx;
  } else {
    idx = it->second;
  }
  return ".g" + std::to_string(idx);
}

void Grounder::trace(const std::string& tag, const Term* t, const Relation& rel) {
  if (sink_) sink_->relation(tag + " " + to_smt(t), rel);
}

// Enforce condition (4): a TU relation carries no false groundings, a UF
// relation no true groundings. Simplification can fold a constructed grounding
// to an id, which moves the row to the opposite compact relation.
Relation Grounder::post_filter(GroundingKind kind, Relation rel, const std::string& gnd_attr) {
  if (!rel.finite() || kind == GroundingKind::G) return rel;
  const Term* banned = store_.truth(kind == GroundingKind::TU ? false : true);
  bool any = false;
  for (const auto& row : rel.fin().rows)
    if (row[rel.attr_index(gnd_attr)] == banned) {
      any = true;
      break;
    }
  if (!any) return rel;
  return select(store_, rel,
                CompareExpr::negate(CompareExpr::eq_lit(gnd_attr, banned)));
}

GroundingRelation Grounder::ground(const Term* t, GroundingKind kind,
                                   std::shared_ptr<const Relation> v) {
  require_covers(*v, t);
  if (kind != GroundingKind::G && !t->is_bool())
    fail(Err::Internal, "TU/UF grounding of a non-boolean term");
  auto key = std::make_tuple(t, static_cast<int>(kind), v.get());
  auto it = ground_memo_.find(key);
  if (it != ground_memo_.end()) return it->second.first;
  GroundingRelation out = dispatch(t, kind, v);
  out.rel = post_filter(kind, std::move(out.rel), out.gnd_attr);
  if (out.rel.finite()) stats_.bump("rows", out.rel.row_count());
  trace(std::string("ground ") + grounding_kind_text(kind), t, out.rel);
  ground_memo_[key] = {out, v};
  return out;
}

GroundingRelation Grounder::dispatch(const Term* t, GroundingKind kind,
                                     const std::shared_ptr<const Relation>& v) {
  switch (t->kind) {
    case Kind::Ident:
      return rule_ident(t, kind, *v);
    case Kind::Var:
      return rule_var(t, kind, *v);
    case Kind::App:
      if (t->is_bool() && kind != GroundingKind::G) return rule_apply(t, kind, v);
      if (t->is_bool()) return ground_bool_via_pad(t, v);
      return rule_apply(t, kind, v);
    case Kind::Not:
      if (kind == GroundingKind::G) return ground_bool_via_pad(t, v);
      return rule_not(t, kind, v);
    case Kind::And:
      if (kind == GroundingKind::G) return ground_bool_via_pad(t, v);
      return rule_and(t, kind, v);
    case Kind::Cmp:
      if (kind == GroundingKind::G) return ground_bool_via_pad(t, v);
      return rule_cmp(t, kind, v);
    case Kind::Forall:
      if (kind == GroundingKind::G) return ground_bool_via_pad(t, v);
      return rule_forall(t, kind, v);
    case Kind::Count:
      if (kind != GroundingKind::G) fail(Err::Internal, "boolean grounding of a count term");
      return rule_count(t, v);
    case Kind::Ite:
      fail(Err::Internal, "ite terms are not grounded directly");
  }
  fail(Err::Internal, "unreachable");
}

// G relation of a boolean term, reconstructed from TU by false-padding.
GroundingRelation Grounder::ground_bool_via_pad(const Term* t,
                                                const std::shared_ptr<const Relation>& v) {
  if (!v->finite())
    fail(Err::InfiniteV, "G grounding of a boolean term needs a finite valuation relation");
  GroundingRelation tu = ground(t, GroundingKind::TU, v);
  Relation covered = project(store_, tu.rel, v->attrs);
  std::vector<Row> pads;
  {
    // V rows not covered by the TU relation get the false grounding
    std::set<Row> seen(covered.fin().rows.begin(), covered.fin().rows.end());
    for (const auto& row : v->fin().rows) {
      if (seen.count(row)) continue;
      Row pad = row;
      pad.push_back(store_.truth(false));
      pads.push_back(std::move(pad));
    }
  }
  std::vector<std::string> attrs = v->attrs;
  attrs.push_back(tu.gnd_attr);
  Relation padded = rel_finite(std::move(attrs), std::move(pads));
  GroundingRelation out;
  out.term = t;
  out.kind = GroundingKind::G;
  out.val_attrs = v->attrs;
  out.gnd_attr = tu.gnd_attr;
  out.rel = union_rows(store_, tu.rel, padded);
  stats_.bump("G-pad", out.rel.row_count());
  return out;
}

// Rules 1.1, 1.2 and 2.1.
GroundingRelation Grounder::rule_ident(const Term* t, GroundingKind kind, const Relation& v) {
  GroundingRelation out;
  out.term = t;
  out.kind = kind;
  out.val_attrs = v.attrs;
  out.gnd_attr = gnd_attr_for(t);
  bool empty = false;
  if (kind != GroundingKind::G) {
    // 1.1 / 1.2: the TU relation of false and the UF relation of true are empty
    bool is_true = t == store_.truth(true);
    empty = (kind == GroundingKind::TU) ? !is_true : is_true;
    stats_.bump(is_true ? "1.1" : "1.2", 0);
  } else {
    stats_.bump("2.1", 0);
  }
  if (empty) {
    std::vector<std::string> attrs = v.attrs;
    attrs.push_back(out.gnd_attr);
    out.rel = rel_empty(std::move(attrs));
    return out;
  }
  out.rel = project_extend(store_, v, v.attrs, out.gnd_attr, ConstructExpr::literal(t));
  return out;
}

// Rules 1.3 and 2.2.
GroundingRelation Grounder::rule_var(const Term* t, GroundingKind kind, const Relation& v) {
  GroundingRelation out;
  out.term = t;
  out.kind = kind;
  out.val_attrs = v.attrs;
  out.gnd_attr = gnd_attr_for(t);
  Relation base = project_extend(store_, v, v.attrs, out.gnd_attr, ConstructExpr::col(t->name));
  if (kind == GroundingKind::G) {
    stats_.bump("2.2", 0);
    out.rel = std::move(base);
    return out;
  }
  stats_.bump("1.3", 0);
  const Term* want = store_.truth(kind == GroundingKind::TU);
  out.rel = select(store_, base, CompareExpr::eq_lit(out.gnd_attr, want));
  return out;
}

// The natural join of the G grounding relations of the arguments (rule 1.4 and
// 2.3 share it). For a constant application the join degenerates to V itself.
Relation Grounder::multi_join_arg_groundings(const Term* t,
                                             const std::shared_ptr<const Relation>& v,
                                             std::vector<std::string>& arg_attrs) {
  if (t->kids.empty()) return *v;
  Relation joined;
  bool first = true;
  for (auto* arg : t->kids) {
    GroundingRelation g = ground(arg, GroundingKind::G, v);
    arg_attrs.push_back(g.gnd_attr);
    if (first) {
      joined = g.rel;
      first = false;
    } else {
      joined = natural_join(store_, joined, g.rel);
    }
  }
  return joined;
}

// Rules 1.4 (predicates) and 2.3 (functions).
GroundingRelation Grounder::rule_apply(const Term* t, GroundingKind kind,
                                       const std::shared_ptr<const Relation>& v) {
  GroundingRelation out;
  out.term = t;
  out.kind = kind;
  out.val_attrs = v->attrs;
  out.gnd_attr = gnd_attr_for(t);

  std::vector<std::string> arg_attrs;
  Relation joined = multi_join_arg_groundings(t, v, arg_attrs);

  // interpretation relation and the key equalities of note 2
  size_t n = t->kids.size();
  Relation frel;
  std::vector<std::string> keys;
  for (size_t i = 0; i < n; ++i) keys.push_back(interp_key_attr(i));
  if (t->fn->variadic()) {
    frel = rel_view(t->fn, nullptr, false, keys, interp_val_attr());
  } else if (kind == GroundingKind::G) {
    frel = function_relation(store_, a_, t->fn);
  } else {
    frel = predicate_tu_view(store_, a_, t->fn);
  }
  std::vector<CompareExpr> eqs;
  for (size_t i = 0; i < n; ++i) eqs.push_back(CompareExpr::eq(arg_attrs[i], keys[i]));
  CompareExpr theta = CompareExpr::conj(std::move(eqs));

  if (kind == GroundingKind::UF) {
    stats_.bump("1.4 UF", 0);
    Relation lj = left_outer_join(store_, joined, frel, theta);
    out.rel = project_extend(store_, lj, v->attrs, out.gnd_attr,
                             ConstructExpr::coalesce(interp_val_attr(), store_.truth(false)));
    return out;  // the sigma-UF selection happens in the shared post filter
  }
  stats_.bump(kind == GroundingKind::TU ? "1.4 TU" : "2.3", 0);
  Relation crossed = theta_cross(store_, joined, frel, theta);
  out.rel = project_extend(store_, crossed, v->attrs, out.gnd_attr,
                           ConstructExpr::col(interp_val_attr()));
  return out;
}

// Rule 1.5.
GroundingRelation Grounder::rule_not(const Term* t, GroundingKind kind,
                                     const std::shared_ptr<const Relation>& v) {
  GroundingKind inner = kind == GroundingKind::TU ? GroundingKind::UF : GroundingKind::TU;
  GroundingRelation sub = ground(t->kids[0], inner, v);
  stats_.bump("1.5", 0);
  GroundingRelation out;
  out.term = t;
  out.kind = kind;
  out.val_attrs = v->attrs;
  out.gnd_attr = gnd_attr_for(t);
  out.rel = project_extend(store_, sub.rel, v->attrs, out.gnd_attr,
                           ConstructExpr::negate(ConstructExpr::col(sub.gnd_attr)));
  return out;
}

// Rule 1.6, n-ary.
GroundingRelation Grounder::rule_and(const Term* t, GroundingKind kind,
                                     const std::shared_ptr<const Relation>& v) {
  GroundingRelation out;
  out.term = t;
  out.kind = kind;
  out.val_attrs = v->attrs;
  out.gnd_attr = gnd_attr_for(t);
  if (kind == GroundingKind::TU) {
    stats_.bump("1.6 TU", 0);
    Relation joined;
    std::vector<ConstructExpr> cols;
    bool first = true;
    for (auto* conjunct : t->kids) {
      GroundingRelation g = ground(conjunct, GroundingKind::TU, v);
      cols.push_back(ConstructExpr::col(g.gnd_attr));
      if (first) {
        joined = g.rel;
        first = false;
      } else {
        joined = natural_join(store_, joined, g.rel);
      }
    }
    out.rel = project_extend(store_, joined, v->attrs, out.gnd_attr,
                             ConstructExpr::conj(std::move(cols)));
    return out;
  }
  stats_.bump("1.6 UF", 0);
  Relation unioned;
  bool first = true;
  for (auto* conjunct : t->kids) {
    GroundingRelation g = ground(conjunct, GroundingKind::UF, v);
    Relation renamed = project_extend(store_, g.rel, v->attrs, out.gnd_attr,
                                      ConstructExpr::col(g.gnd_attr));
    if (first) {
      unioned = std::move(renamed);
      first = false;
    } else {
      unioned = union_rows(store_, unioned, renamed);
    }
  }
  out.rel = project_aggregate(store_, unioned, v->attrs, out.gnd_attr, AggOp::AndOp,
                              ConstructExpr::col(out.gnd_attr));
  return out;
}

// Rule 1.7 with the rho conditions of note 3.
GroundingRelation Grounder::rule_cmp(const Term* t, GroundingKind kind,
                                     const std::shared_ptr<const Relation>& v) {
  GroundingRelation g0 = ground(t->kids[0], GroundingKind::G, v);
  GroundingRelation g1 = ground(t->kids[1], GroundingKind::G, v);
  stats_.bump(kind == GroundingKind::TU ? "1.7 TU" : "1.7 UF", 0);
  Relation joined = g0.term == g1.term ? g0.rel : natural_join(store_, g0.rel, g1.rel);

  CompareExpr base = t->op == CmpOp::Eq ? CompareExpr::eq(g0.gnd_attr, g1.gnd_attr)
                                        : CompareExpr::ord(t->op, g0.gnd_attr, g1.gnd_attr);
  if (kind == GroundingKind::UF) base = CompareExpr::negate(std::move(base));
  CompareExpr rho = CompareExpr::disj(
      {CompareExpr::negate(CompareExpr::is_id(g0.gnd_attr)),
       CompareExpr::negate(CompareExpr::is_id(g1.gnd_attr)), std::move(base)});
  Relation selected = select(store_, joined, rho);

  GroundingRelation out;
  out.term = t;
  out.kind = kind;
  out.val_attrs = v->attrs;
  out.gnd_attr = gnd_attr_for(t);
  out.rel = project_extend(store_, selected, v->attrs, out.gnd_attr,
                           ConstructExpr::cmp(t->op, ConstructExpr::col(g0.gnd_attr),
                                              ConstructExpr::col(g1.gnd_attr)));
  return out;
}

namespace {

// R pad of rules 1.8 and 2.4: every valuation of V, Null for the other
// attributes, and a fixed grounding value.
Relation pad_relation(const Relation& v, const std::vector<std::string>& target_attrs,
                      const std::string& gnd_attr, const Term* fill) {
  std::vector<Row> rows;
  rows.reserve(v.fin().rows.size());
  for (const auto& vrow : v.fin().rows) {
    Row row;
    row.reserve(target_attrs.size());
    for (const auto& a : target_attrs) {
      if (a == gnd_attr) row.push_back(fill);
      else if (v.has_attr(a)) row.push_back(vrow[v.attr_index(a)]);
      else row.push_back(nullptr);
    }
    rows.push_back(std::move(row));
  }
  return rel_finite(target_attrs, std::move(rows));
}

}  // namespace

// Fallback when W is infinite: the quantifier is kept with its binder intact,
// instantiated with the outer valuation.
GroundingRelation Grounder::residual_quantifier(const Term* t, GroundingKind kind,
                                                const Relation& v) {
  saw_residual_ = true;
  ++stats_.residuals;
  GroundingRelation out;
  out.term = t;
  out.kind = kind;
  out.val_attrs = v.attrs;
  out.gnd_attr = gnd_attr_for(t);
  std::vector<std::string> attrs = v.attrs;
  attrs.push_back(out.gnd_attr);
  std::vector<Row> rows;
  std::vector<const Term*> frees = free_variables(t);
  for (const auto& vrow : v.fin().rows) {
    std::map<const Term*, const Term*> subst_map;
    for (auto* x : frees) subst_map[x] = vrow[v.attr_index(x->name)];
    const Term* inst = simplify(store_, substitute(store_, t, subst_map));
    Row row = vrow;
    row.push_back(inst);
    rows.push_back(std::move(row));
  }
  out.rel = rel_finite(std::move(attrs), std::move(rows));
  return out;
}

// Rule 1.8.
GroundingRelation Grounder::rule_forall(const Term* t, GroundingKind kind,
                                        const std::shared_ptr<const Relation>& v) {
  const Term* body = t->kids[0];
  Relation w;
  bool w_ok = true;
  try {
    Relation xg = xgen(body, GroundingKind::UF);
    w = natural_join(store_, *v, xg);
  } catch (const Error& e) {
    if (e.code() == Err::Internal || e.code() == Err::CountNotFinite) throw;
    w_ok = false;
  }
  if (!w_ok || !w.finite()) {
    stats_.bump(kind == GroundingKind::TU ? "1.8 TU residual" : "1.8 UF residual", 0);
    return residual_quantifier(t, kind, *v);
  }
  trace("W", t, w);
  GroundingRelation sub = ground(body, GroundingKind::UF,
                                 std::make_shared<const Relation>(std::move(w)));
  GroundingRelation out;
  out.term = t;
  out.kind = kind;
  out.val_attrs = v->attrs;
  out.gnd_attr = gnd_attr_for(t);

  Relation u = sub.rel;
  if (kind == GroundingKind::TU) {
    stats_.bump("1.8 TU", 0);
    Relation pad = pad_relation(*v, sub.rel.attrs, sub.gnd_attr, store_.truth(true));
    u = union_rows(store_, u, pad);
  } else {
    stats_.bump("1.8 UF", 0);
  }
  out.rel = project_aggregate(store_, u, v->attrs, out.gnd_attr, AggOp::AndOp,
                              ConstructExpr::col(sub.gnd_attr));
  return out;  // sigma-TU runs in the shared post filter
}

// Rule 2.4.
GroundingRelation Grounder::rule_count(const Term* t, const std::shared_ptr<const Relation>& v) {
  const Term* body = t->kids[0];
  Relation w;
  try {
    Relation xg = xgen(body, GroundingKind::TU);
    Relation w1 = natural_join(store_, *v, xg);
    Relation y = rel_all_valuations(store_, t->binders);
    w = natural_join(store_, w1, y);
  } catch (const Error& e) {
    if (e.code() == Err::CountNotFinite || e.code() == Err::Internal) throw;
    fail(Err::CountNotFinite,
         "the instantiation set of " + to_smt(t) + " is not finite: " + e.what());
  }
  if (!w.finite())
    fail(Err::CountNotFinite, "the instantiation set of " + to_smt(t) + " is not finite");
  trace("W", t, w);
  stats_.bump("2.4", w.row_count());
  GroundingRelation sub = ground(body, GroundingKind::TU,
                                 std::make_shared<const Relation>(std::move(w)));
  Relation pad = pad_relation(*v, sub.rel.attrs, sub.gnd_attr, store_.truth(false));
  Relation u = union_rows(store_, sub.rel, pad);

  GroundingRelation out;
  out.term = t;
  out.kind = GroundingKind::G;
  out.val_attrs = v->attrs;
  out.gnd_attr = gnd_attr_for(t);
  const Sort* int_sort = store_.int_sort();
  ConstructExpr expr = ConstructExpr::ite(
      ConstructExpr::col(sub.gnd_attr),
      ConstructExpr::literal(store_.numeral(Rational(BigInt(1)), int_sort)),
      ConstructExpr::literal(store_.numeral(Rational(BigInt(0)), int_sort)));
  out.rel = project_aggregate(store_, u, v->attrs, out.gnd_attr, AggOp::Sum, std::move(expr));
  return out;
}

// ---- x-generators (Table 3) -------------------------------------------------

Relation Grounder::widen(const Term* t) {
  return rel_all_valuations(store_, free_variables(t));
}

Relation Grounder::xgen(const Term* t, GroundingKind pol) {
  if (pol == GroundingKind::G) fail(Err::Internal, "x-generators are TU or UF only");
  auto key = std::make_pair(t, static_cast<int>(pol));
  auto it = xgen_memo_.find(key);
  if (it != xgen_memo_.end()) return it->second;
  Relation out;
  try {
    out = xgen_dispatch(t, pol);
  } catch (const Error& e) {
    if (e.code() == Err::Internal) throw;
    out = widen(t);  // non-exact fallback: the set of all valuations
    stats_.bump("xgen widen", 0);
  }
  trace(std::string("xgen ") + grounding_kind_text(pol), t, out);
  xgen_memo_[key] = out;
  return out;
}

Relation Grounder::xgen_dispatch(const Term* t, GroundingKind pol) {
  bool tu = pol == GroundingKind::TU;
  switch (t->kind) {
    case Kind::Ident: {  // rules 3.1 and 3.2
      stats_.bump("3.1", 0);
      bool is_true = t == store_.truth(true);
      if (is_true == tu) return rel_unit();
      return rel_empty({});
    }
    case Kind::Var:  // rule 3.3
      stats_.bump("3.3", 0);
      return rel_singleton(t->name, store_.truth(tu));
    case Kind::App: {  // rule 3.4
      if (!t->is_bool()) fail(Err::Internal, "x-generator of a non-boolean term");
      if (!tu) {
        stats_.bump("3.4 UF", 0);
        return widen(t);
      }
      stats_.bump("3.4 TU", 0);
      auto x = std::make_shared<const Relation>(widen(t));
      std::vector<std::string> arg_attrs;
      Relation joined = multi_join_arg_groundings(t, x, arg_attrs);
      Relation ptu = predicate_tu_view(store_, a_, t->fn);
      std::vector<CompareExpr> eqs;
      for (size_t i = 0; i < t->kids.size(); ++i)
        eqs.push_back(CompareExpr::eq(arg_attrs[i], interp_key_attr(i)));
      Relation crossed = theta_cross(store_, joined, ptu, CompareExpr::conj(std::move(eqs)));
      return project(store_, crossed, free_var_names(t));
    }
    case Kind::Not:  // rule 3.5
      stats_.bump("3.5", 0);
      return xgen(t->kids[0], tu ? GroundingKind::UF : GroundingKind::TU);
    case Kind::And: {  // rule 3.6
      if (tu) {
        stats_.bump("3.6 TU", 0);
        Relation acc;
        bool first = true;
        for (auto* conjunct : t->kids) {
          Relation xg = xgen(conjunct, GroundingKind::TU);
          if (first) {
            acc = std::move(xg);
            first = false;
          } else {
            acc = natural_join(store_, acc, xg);
          }
        }
        return acc;
      }
      stats_.bump("3.6 UF", 0);
      Relation x = widen(t);
      Relation acc;
      bool first = true;
      for (auto* conjunct : t->kids) {
        Relation xg = xgen(conjunct, GroundingKind::UF);
        Relation widened = natural_join(store_, x, xg);
        if (first) {
          acc = std::move(widened);
          first = false;
        } else {
          acc = union_rows(store_, acc, widened);
        }
      }
      return acc;
    }
    case Kind::Cmp: {  // rules 3.7 and 3.8
      bool equivalence = t->op == CmpOp::Eq && t->kids[0]->is_bool();
      if (equivalence && !tu) {  // rule 3.8 right
        stats_.bump("3.8 UF", 0);
        Relation x = widen(t);
        Relation l = natural_join(store_, x, xgen(t->kids[0], GroundingKind::TU));
        Relation r = natural_join(store_, x, xgen(t->kids[1], GroundingKind::TU));
        return union_rows(store_, l, r);
      }
      stats_.bump(equivalence ? "3.8 TU" : (tu ? "3.7 TU" : "3.7 UF"), 0);
      auto x = std::make_shared<const Relation>(widen(t));
      GroundingRelation g0 = ground(t->kids[0], GroundingKind::G, x);
      GroundingRelation g1 = ground(t->kids[1], GroundingKind::G, x);
      Relation joined =
          g0.term == g1.term ? g0.rel : natural_join(store_, g0.rel, g1.rel);
      CompareExpr base = t->op == CmpOp::Eq
                             ? CompareExpr::eq(g0.gnd_attr, g1.gnd_attr)
                             : CompareExpr::ord(t->op, g0.gnd_attr, g1.gnd_attr);
      if (!tu) base = CompareExpr::negate(std::move(base));
      CompareExpr rho = CompareExpr::disj(
          {CompareExpr::negate(CompareExpr::is_id(g0.gnd_attr)),
           CompareExpr::negate(CompareExpr::is_id(g1.gnd_attr)), std::move(base)});
      Relation selected = select(store_, joined, rho);
      return project(store_, selected, free_var_names(t));
    }
    case Kind::Forall:  // rule 3.9
      stats_.bump("3.9", 0);
      return project(store_, xgen(t->kids[0], pol), free_var_names(t));
    case Kind::Count:
    case Kind::Ite:
      fail(Err::Internal, "x-generator of a non-boolean term");
  }
  fail(Err::Internal, "unreachable");
}

// ---- sentences ----------------------------------------------------------------

SentenceGrounding Grounder::ground_sentence(const Term* sentence) {
  if (!sentence->is_bool()) fail(Err::Sort, "assertions must be boolean");
  if (!free_variables(sentence).empty())
    fail(Err::Internal, "ground_sentence expects a closed sentence");
  ground_memo_.clear();
  xgen_memo_.clear();
  saw_residual_ = false;

  auto unit = std::make_shared<const Relation>(rel_unit());
  GroundingRelation uf = ground(sentence, GroundingKind::UF, unit);
  SentenceGrounding out;
  out.residual = saw_residual_;
  if (uf.rel.fin().rows.empty()) {
    out.term = store_.truth(true);
    return out;
  }
  if (uf.rel.fin().rows.size() != 1)
    fail(Err::Internal, "closed sentence grounding produced several rows");
  out.term = uf.rel.fin().rows[0][uf.rel.attr_index(uf.gnd_attr)];
  return out;
}

}  // namespace rground
