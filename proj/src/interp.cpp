#include "rground/interp.hpp"

namespace rground {

std::string interp_key_attr(size_t i) { return ".a" + std::to_string(i + 1); }
std::string interp_val_attr() { return ".fv"; }

Relation sort_relation(TermStore& store, const Sort* sort) {
  if (sort->finite()) {
    std::vector<Row> rows;
    for (const Term* id : sort->ids) rows.push_back(Row{id});
    return rel_finite({sort->name}, std::move(rows));
  }
  return rel_all_valuations(store, {store.var(sort->name, sort)});
}

namespace {

std::vector<std::string> key_attrs_for(const FuncSym* fn) {
  std::vector<std::string> keys;
  for (size_t i = 0; i < fn->arg_sorts.size(); ++i) keys.push_back(interp_key_attr(i));
  return keys;
}

}  // namespace

Relation function_relation(TermStore& store, const Structure& a, const FuncSym* fn) {
  const Interp* in = a.find(fn);
  if (fn->arg_sorts.empty()) {
    const Term* val = nullptr;
    if (in) {
      auto it = in->points.find({});
      if (it != in->points.end()) val = it->second;
      else if (in->default_value && !in->unknown.count({})) val = in->default_value;
    }
    if (!val) val = store.app(fn, {});
    return rel_singleton(interp_val_attr(), val);
  }
  return rel_view(fn, in, /*drop_false=*/false, key_attrs_for(fn), interp_val_attr());
}

Relation predicate_tu_view(TermStore& store, const Structure& a, const FuncSym* fn) {
  if (!fn->is_predicate()) fail(Err::UnknownSymbol, fn->name + " is not a predicate");
  const Interp* in = a.find(fn);
  const Term* ff = store.truth(false);
  auto keys = key_attrs_for(fn);
  if (fn->arg_sorts.empty()) {
    // a boolean constant: one row unless it is interpreted as false
    const Term* val = nullptr;
    if (in) {
      auto it = in->points.find({});
      if (it != in->points.end()) val = it->second;
      else if (in->default_value && !in->unknown.count({})) val = in->default_value;
    }
    if (!val) val = store.app(fn, {});
    if (val == ff) return rel_empty({interp_val_attr()});
    return rel_singleton(interp_val_attr(), val);
  }
  if (in && in->default_value == ff) {
    // closed world: exactly the listed non-false points plus unknown atoms
    std::vector<Row> rows;
    for (const auto& [args, val] : in->points) {
      if (val == ff) continue;
      Row row = args;
      row.push_back(val);
      rows.push_back(std::move(row));
    }
    for (const auto& args : in->unknown) {
      if (in->points.count(args)) continue;
      Row row = args;
      row.push_back(store.app(fn, args));
      rows.push_back(std::move(row));
    }
    std::vector<std::string> attrs = keys;
    attrs.push_back(interp_val_attr());
    return rel_finite(std::move(attrs), std::move(rows));
  }
  Relation view = rel_view(fn, in, /*drop_false=*/true, keys, interp_val_attr());
  if (view.is_finite()) return materialize(store, view);
  return view;
}

Relation predicate_tu_relation(TermStore& store, const Structure& a, const FuncSym* fn) {
  Relation r = predicate_tu_view(store, a, fn);
  if (r.finite()) return r;
  fail(Err::InfiniteTU, "the TU interpretation relation of " + fn->name + " is not finite");
}

}  // namespace rground
