#ifndef RGROUND_TERM_HPP
#define RGROUND_TERM_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "rground/error.hpp"
#include "rground/rational.hpp"

namespace rground {

class TermStore;
struct Term;

struct Sort {
  enum class Kind { Bool, Datatype, Int, Real };

  std::string name;
  Kind kind;
  std::vector<const Term*> ids;  // universe; empty for Int/Real (symbolic-infinite)

  bool finite() const { return kind == Kind::Bool || kind == Kind::Datatype; }
  bool numeric() const { return kind == Kind::Int || kind == Kind::Real; }
};

struct FuncSym {
  enum class Builtin { None, Add, Sub, Mul };

  std::string name;
  std::vector<const Sort*> arg_sorts;
  const Sort* result;
  Builtin builtin = Builtin::None;

  bool is_predicate() const;
  bool variadic() const { return builtin != Builtin::None; }
};

enum class Kind { Ident, Var, App, Not, And, Cmp, Ite, Forall, Count };
enum class CmpOp { Lt, Le, Eq, Ge, Gt };

const char* cmp_op_text(CmpOp op);

// Immutable hash-consed term node. Pointer equality is structural equality.
struct Term {
  Kind kind;
  const Sort* sort;
  std::string name;                  // Ident / Var
  std::optional<Rational> value;     // numeral Idents
  const FuncSym* fn = nullptr;       // App
  CmpOp op = CmpOp::Eq;              // Cmp
  std::vector<const Term*> binders;  // Forall / Count (Var nodes)
  std::vector<const Term*> kids;     // App args, Not/And/Cmp/Ite children, binder body

  bool is_id() const { return kind == Kind::Ident; }
  bool is_numeral() const { return kind == Kind::Ident && value.has_value(); }
  bool is_bool() const { return sort->kind == Sort::Kind::Bool; }
  const Term* body() const { return kids[0]; }
};

// Deterministic total order on terms (structural; numerals by value).
int term_compare(const Term* a, const Term* b);

struct TermPtrLess {
  bool operator()(const Term* a, const Term* b) const { return term_compare(a, b) < 0; }
};

std::string to_smt(const Term* t);

// Partial interpretation of one symbol: explicit points, explicitly-unknown
// points, and an optional default for every other point in the domain.
struct Interp {
  std::map<std::vector<const Term*>, const Term*> points;
  std::set<std::vector<const Term*>> unknown;
  const Term* default_value = nullptr;

  bool total_over_finite() const { return default_value != nullptr && unknown.empty(); }
};

// The input structure A: partial symbol interpretations. Sort universes live
// on the Sort objects owned by the TermStore.
struct Structure {
  std::map<const FuncSym*, Interp> interps;

  const Interp* find(const FuncSym* fn) const {
    auto it = interps.find(fn);
    return it == interps.end() ? nullptr : &it->second;
  }
};

class Valuation {
 public:
  Valuation() = default;

  void bind(const Term* var, const Term* id);
  void pop() { bindings_.pop_back(); }
  const Term* lookup(const Term* var) const;  // innermost binding or null
  size_t size() const { return bindings_.size(); }
  const std::vector<std::pair<const Term*, const Term*>>& bindings() const { return bindings_; }

 private:
  std::vector<std::pair<const Term*, const Term*>> bindings_;
};

class TermStore {
 public:
  TermStore();
  TermStore(const TermStore&) = delete;
  TermStore& operator=(const TermStore&) = delete;

  // Sorts
  const Sort* bool_sort() const { return bool_; }
  const Sort* int_sort() const { return int_; }
  const Sort* real_sort() const { return real_; }
  const Sort* declare_datatype(const std::string& name, const std::vector<std::string>& ctors);
  const Sort* find_sort(const std::string& name) const;

  // Symbols
  const FuncSym* declare_fun(const std::string& name, std::vector<const Sort*> args,
                             const Sort* result);
  const FuncSym* find_fun(const std::string& name) const;
  const FuncSym* builtin_arith(FuncSym::Builtin b, const Sort* s);
  const std::vector<const FuncSym*>& declared_funs() const { return fun_order_; }

  // Leaves
  const Term* truth(bool b) const { return b ? tt_ : ff_; }
  const Term* id(const std::string& name, const Sort* sort);
  const Term* find_id(const std::string& name) const;
  const Term* numeral(const Rational& v, const Sort* sort);
  const Term* var(const std::string& name, const Sort* sort);
  const Term* fresh_var(const Sort* sort);

  // Composite nodes (throw SortError on ill-sorted construction)
  const Term* app(const FuncSym* fn, std::vector<const Term*> args);
  const Term* negation(const Term* t);
  const Term* conj(std::vector<const Term*> ts);
  const Term* cmp(CmpOp op, const Term* a, const Term* b);
  const Term* ite(const Term* c, const Term* a, const Term* b);
  const Term* forall(std::vector<const Term*> vars, const Term* body);
  const Term* count(std::vector<const Term*> vars, const Term* body);

  // The reserved prefix: rejected in user input, usable for fresh names.
  static bool reserved_name(const std::string& s) {
    return !s.empty() && (s[0] == '.' || s[0] == '@');
  }

  std::string fresh_name(const std::string& stem) { return "." + stem + std::to_string(++fresh_); }

 private:
  const Term* intern(Term&& node);

  std::vector<std::unique_ptr<Term>> arena_;
  std::unordered_map<size_t, std::vector<const Term*>> buckets_;
  std::vector<std::unique_ptr<Sort>> sorts_;
  std::map<std::string, const Sort*> sort_by_name_;
  std::vector<std::unique_ptr<FuncSym>> funs_;
  std::map<std::string, const FuncSym*> fun_by_name_;
  std::vector<const FuncSym*> fun_order_;
  std::map<std::pair<int, const Sort*>, const FuncSym*> builtins_;
  std::map<std::string, const Term*> named_ids_;
  uint64_t fresh_ = 0;

  Sort* bool_ = nullptr;
  Sort* int_ = nullptr;
  Sort* real_ = nullptr;
  const Term* tt_ = nullptr;
  const Term* ff_ = nullptr;
};

// ---- semantics & preprocessing -------------------------------------------

// Meaning of a term in a total interpretation; the testing oracle.
const Term* evaluate(TermStore& store, const Structure& a, const Term* t, Valuation& val);
const Term* evaluate_closed(TermStore& store, const Structure& a, const Term* t);

std::vector<const Term*> free_variables(const Term* t);

// Capture-naive substitution of variables; callers guarantee binder freshness.
const Term* substitute(TermStore& store, const Term* t,
                       const std::map<const Term*, const Term*>& m);

const Term* rename_shadowed(TermStore& store, const Term* t);
// Same, treating extra_used as already-taken names (capture-safe inlining).
const Term* rename_shadowed(TermStore& store, const Term* t,
                            const std::set<std::string>& extra_used);
const Term* unnest(TermStore& store, const Term* t);

// Apply args are all ids or variables (binder bodies included).
bool is_simple_form(const Term* t);

// Arithmetic folding over numeral ids; null when not all-numeral.
const Term* fold_builtin(TermStore& store, const FuncSym* fn, const std::vector<const Term*>& args);

}  // namespace rground

#endif
