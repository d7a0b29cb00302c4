#ifndef RGROUND_RELATION_HPP
#define RGROUND_RELATION_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rground/term.hpp"

namespace rground {

// A row of interned terms; nullptr is the distinguished Null marker
// introduced by outer joins and pad relations.
using Row = std::vector<const Term*>;

// ---- comparison language ----------------------------------------------------

enum class CKind { True, IsId, EqAttr, EqLit, Ord, Not, And, Or };

struct CompareExpr {
  CKind kind = CKind::True;
  std::string a, b;
  const Term* lit = nullptr;
  CmpOp op = CmpOp::Eq;
  std::vector<CompareExpr> kids;

  static CompareExpr truth();
  static CompareExpr is_id(std::string attr);
  static CompareExpr eq(std::string a, std::string b);  // syntactic term equality
  static CompareExpr eq_lit(std::string a, const Term* lit);
  static CompareExpr ord(CmpOp op, std::string a, std::string b);
  static CompareExpr negate(CompareExpr e);
  static CompareExpr conj(std::vector<CompareExpr> es);
  static CompareExpr disj(std::vector<CompareExpr> es);
};

// ---- construction language --------------------------------------------------

enum class EKind { Lit, Col, Coalesce, And, Or, Cmp, Sum, Ite, Neg };

struct ConstructExpr {
  EKind kind = EKind::Lit;
  std::string attr;
  const Term* lit = nullptr;
  CmpOp op = CmpOp::Eq;
  std::vector<ConstructExpr> kids;

  static ConstructExpr literal(const Term* t);
  static ConstructExpr col(std::string attr);
  static ConstructExpr coalesce(std::string attr, const Term* dflt);
  static ConstructExpr negate(ConstructExpr e);
  static ConstructExpr conj(std::vector<ConstructExpr> es);
  static ConstructExpr disj(std::vector<ConstructExpr> es);
  static ConstructExpr cmp(CmpOp op, ConstructExpr a, ConstructExpr b);
  static ConstructExpr sum(std::vector<ConstructExpr> es);
  static ConstructExpr ite(ConstructExpr c, ConstructExpr a, ConstructExpr b);
};

// ---- relation bodies --------------------------------------------------------

struct FiniteRel {
  std::vector<Row> rows;  // sorted, duplicate-free, aligned with Relation::attrs
};

// A column of a symbolic relation whose value is computed from other columns.
struct Deriv {
  enum class K { Const, Copy, UApp };
  K k = K::Const;
  const Term* lit = nullptr;           // Const
  std::string src;                     // Copy
  const FuncSym* fn = nullptr;         // UApp: fn applied to args, never interpreted
  std::vector<std::string> args;       // UApp
};

// (fin rows) x (all valuations of vars), extended with derived columns.
// vars all have infinite sorts; finite-sorted variables are materialized into
// the fin part at construction.
struct InfRel {
  std::vector<const Term*> vars;                    // Var nodes, infinite sorts
  std::vector<std::string> fin_attrs;               // sorted
  std::vector<Row> fin_rows;                        // aligned with fin_attrs
  std::vector<std::pair<std::string, Deriv>> derived;
  bool universal = false;  // denotes exactly the set of all valuations of its attrs
};

// Interpretation relation of a ranked function symbol, computed on demand
// from the key tuple rather than stored.
struct ViewRel {
  const FuncSym* fn = nullptr;
  const Interp* interp = nullptr;  // null: fully uninterpreted
  bool drop_false = false;         // TU view of a predicate: false rows are absent
  std::vector<std::string> key_attrs;  // in argument order, reserved names
  std::string val_attr;

  bool pure_constructor() const {
    return fn->builtin == FuncSym::Builtin::None &&
           (interp == nullptr ||
            (interp->points.empty() && interp->default_value == nullptr));
  }
};

struct Relation {
  std::vector<std::string> attrs;  // sorted ascending
  std::variant<FiniteRel, InfRel, ViewRel> body;

  bool finite() const { return std::holds_alternative<FiniteRel>(body); }
  bool infinite_symbolic() const { return std::holds_alternative<InfRel>(body); }
  bool view() const { return std::holds_alternative<ViewRel>(body); }
  bool is_finite() const;

  const FiniteRel& fin() const { return std::get<FiniteRel>(body); }
  const InfRel& inf() const { return std::get<InfRel>(body); }
  const ViewRel& as_view() const { return std::get<ViewRel>(body); }

  size_t row_count() const { return fin().rows.size(); }
  bool has_attr(const std::string& a) const;
  size_t attr_index(const std::string& a) const;  // throws UnknownAttribute
};

// ---- constructors -----------------------------------------------------------

Relation rel_empty(std::vector<std::string> attrs);
Relation rel_unit();
Relation rel_singleton(const std::string& attr, const Term* t);
// Normalizes: sorts attributes, permutes rows, removes duplicates.
Relation rel_finite(std::vector<std::string> attrs, std::vector<Row> rows);
// All id tuples of the variables' sorts; attribute names are variable names.
Relation rel_all_valuations(TermStore& store, const std::vector<const Term*>& vars);
Relation rel_view(const FuncSym* fn, const Interp* interp, bool drop_false,
                  std::vector<std::string> key_attrs, std::string val_attr);

// View lookup for an id key tuple: nullopt when the row is absent (drop view).
std::optional<const Term*> view_lookup(TermStore& store, const ViewRel& v, const Row& keys);

// ---- operators ---------------------------------------------------------------

Relation select(TermStore& store, const Relation& r, const CompareExpr& cond);
Relation cross(TermStore& store, const Relation& l, const Relation& r);
Relation theta_cross(TermStore& store, const Relation& l, const Relation& r,
                     const CompareExpr& theta);
Relation natural_join(TermStore& store, const Relation& l, const Relation& r);
Relation theta_natural_join(TermStore& store, const Relation& l, const Relation& r,
                            const CompareExpr& theta);
Relation left_outer_join(TermStore& store, const Relation& l, const Relation& r,
                         const CompareExpr& theta);
Relation union_rows(TermStore& store, const Relation& l, const Relation& r);
Relation project(TermStore& store, const Relation& r, const std::vector<std::string>& keep);
Relation project_extend(TermStore& store, const Relation& r, const std::vector<std::string>& keep,
                        const std::string& new_attr, const ConstructExpr& expr);

enum class AggOp { Sum, AndOp, OrOp };

Relation project_aggregate(TermStore& store, const Relation& r,
                           const std::vector<std::string>& group, const std::string& new_attr,
                           AggOp op, const ConstructExpr& expr);

bool check_functional_dependency(const Relation& r, const std::vector<std::string>& from,
                                 const std::vector<std::string>& to);

// Enumerates a symbolic relation when every column ranges over a finite set.
Relation materialize(TermStore& store, const Relation& r);

std::string debug_dump(const Relation& r);

}  // namespace rground

#endif
