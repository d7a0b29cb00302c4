#ifndef RGROUND_GROUNDER_HPP
#define RGROUND_GROUNDER_HPP

#include <map>
#include <memory>
#include <string>

#include "rground/interp.hpp"
#include "rground/relation.hpp"
#include "rground/term.hpp"

namespace rground {

enum class GroundingKind { G, TU, UF };

const char* grounding_kind_text(GroundingKind k);

struct GroundingRelation {
  const Term* term = nullptr;
  GroundingKind kind = GroundingKind::G;
  std::vector<std::string> val_attrs;  // the valuation relation's attributes
  std::string gnd_attr;
  Relation rel;
};

// Receives intermediate relations: x-generators, W instantiation sets, and
// per-node grounding relations.
struct TraceSink {
  virtual ~TraceSink() = default;
  virtual void relation(const std::string& label, const Relation& rel) = 0;
};

struct GroundStats {
  std::map<std::string, long> rule_counts;
  size_t max_rows = 0;
  long residuals = 0;

  void bump(const std::string& rule, size_t rows) {
    ++rule_counts[rule];
    if (rows > max_rows) max_rows = rows;
  }
};

struct SentenceGrounding {
  const Term* term = nullptr;  // the grounding; may contain residual binders
  bool residual = false;
};

class Grounder {
 public:
  Grounder(TermStore& store, const Structure& a) : store_(store), a_(a) {}

  void set_trace(TraceSink* sink) { sink_ = sink; }

  // Grounding relation of a term for the interpretations A V (Tables 1 and 2).
  GroundingRelation ground(const Term* t, GroundingKind kind,
                           std::shared_ptr<const Relation> v);

  // X-generator of a boolean term (Table 3); polarity is TU or UF.
  Relation xgen(const Term* t, GroundingKind polarity);

  // Grounding of a closed sentence: the UF relation for the unit valuation.
  SentenceGrounding ground_sentence(const Term* sentence);

  const GroundStats& stats() const { return stats_; }
  GroundStats& stats() { return stats_; }

 private:
  GroundingRelation dispatch(const Term* t, GroundingKind kind,
                             const std::shared_ptr<const Relation>& v);
  GroundingRelation ground_bool_via_pad(const Term* t, const std::shared_ptr<const Relation>& v);
  GroundingRelation rule_ident(const Term* t, GroundingKind kind, const Relation& v);
  GroundingRelation rule_var(const Term* t, GroundingKind kind, const Relation& v);
  GroundingRelation rule_apply(const Term* t, GroundingKind kind,
                               const std::shared_ptr<const Relation>& v);
  GroundingRelation rule_not(const Term* t, GroundingKind kind,
                             const std::shared_ptr<const Relation>& v);
  GroundingRelation rule_and(const Term* t, GroundingKind kind,
                             const std::shared_ptr<const Relation>& v);
  GroundingRelation rule_cmp(const Term* t, GroundingKind kind,
                             const std::shared_ptr<const Relation>& v);
  GroundingRelation rule_forall(const Term* t, GroundingKind kind,
                                const std::shared_ptr<const Relation>& v);
  GroundingRelation rule_count(const Term* t, const std::shared_ptr<const Relation>& v);
  GroundingRelation residual_quantifier(const Term* t, GroundingKind kind, const Relation& v);

  Relation xgen_dispatch(const Term* t, GroundingKind pol);
  Relation widen(const Term* t);  // all valuations of the free variables

  std::string gnd_attr_for(const Term* t);
  Relation post_filter(GroundingKind kind, Relation rel, const std::string& gnd_attr);
  void trace(const std::string& tag, const Term* t, const Relation& rel);
  Relation multi_join_arg_groundings(const Term* t, const std::shared_ptr<const Relation>& v,
                                     std::vector<std::string>& arg_attrs);

  TermStore& store_;
  const Structure& a_;
  TraceSink* sink_ = nullptr;
  GroundStats stats_;

  std::map<const Term*, int> node_index_;
  int next_index_ = 0;
  bool saw_residual_ = false;

  std::map<std::tuple<const Term*, int, const Relation*>,
           std::pair<GroundingRelation, std::shared_ptr<const Relation>>>
      ground_memo_;
  std::map<std::pair<const Term*, int>, Relation> xgen_memo_;
};

}  // namespace rground

#endif
