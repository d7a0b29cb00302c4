#include <cctype>
#include <cstring>
#include <map>
#include <sstream>

#include "rground/script.hpp"
#include "rground/simplify.hpp"

namespace rground {

namespace {

// ---- s-expressions -----------------------------------------------------------

struct SExpr {
  enum class K { Atom, Str, List };
  K k = K::Atom;
  std::string atom;
  std::vector<SExpr> kids;
  Location loc;

  bool is_atom(const char* s) const { return k == K::Atom && atom == s; }
};

bool symbol_char(char c) {
  if (std::isalnum(static_cast<unsigned char>(c))) return true;
  return std::strchr("~!@$%^&*_-+=<>.?/", c) != nullptr;
}

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  std::vector<SExpr> parse_all() {
    std::vector<SExpr> out;
    skip_ws();
    while (pos_ < text_.size()) {
      out.push_back(parse_one());
      skip_ws();
    }
    return out;
  }

 private:
  [[noreturn]] void err(const std::string& msg) {
    fail(Err::Syntax, loc().str() + ": " + msg);
  }

  Location loc() const { return Location{line_, col_}; }

  void advance() {
    if (pos_ < text_.size() && text_[pos_] == '\n') {
      ++line_;
      col_ = 0;
    }
    ++pos_;
    ++col_;
  }

  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  SExpr parse_one() {
    skip_ws();
    if (pos_ >= text_.size()) err("unexpected end of input");
    char c = text_[pos_];
    SExpr e;
    e.loc = loc();
    if (c == '(') {
      advance();
      e.k = SExpr::K::List;
      skip_ws();
      while (pos_ < text_.size() && text_[pos_] != ')') {
        e.kids.push_back(parse_one());
        skip_ws();
      }
      if (pos_ >= text_.size()) err("missing closing parenthesis");
      advance();
      return e;
    }
    if (c == ')') err("unexpected ')'");
    if (c == '"') {
      advance();
      e.k = SExpr::K::Str;
      while (pos_ < text_.size()) {
        char d = text_[pos_];
        if (d == '"') {
          advance();
          if (pos_ < text_.size() && text_[pos_] == '"') {  // escaped quote
            e.atom.push_back('"');
            advance();
            continue;
          }
          return e;
        }
        e.atom.push_back(d);
        advance();
      }
      err("unterminated string literal");
    }
    if (!symbol_char(c)) err(std::string("unexpected character '") + c + "'");
    while (pos_ < text_.size() && symbol_char(text_[pos_])) {
      e.atom.push_back(text_[pos_]);
      advance();
    }
    return e;
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

std::string sexpr_text(const SExpr& e) {
  if (e.k == SExpr::K::Atom) return e.atom;
  if (e.k == SExpr::K::Str) {
    std::string out = "\"";
    for (char c : e.atom) {
      if (c == '"') out += "\"\"";
      else out.push_back(c);
    }
    return out + "\"";
  }
  std::string out = "(";
  for (size_t i = 0; i < e.kids.size(); ++i) {
    if (i) out += " ";
    out += sexpr_text(e.kids[i]);
  }
  return out + ")";
}

bool is_numeral(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

bool is_decimal(const std::string& s) {
  auto dot = s.find('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 >= s.size()) return false;
  return is_numeral(s.substr(0, dot)) && is_numeral(s.substr(dot + 1));
}

// ---- the reader ----------------------------------------------------------------

struct Macro {
  std::vector<const Term*> params;
  const Term* body = nullptr;
};

class Reader {
 public:
  explicit Reader(Script& script) : script_(script), store_(*script.store) {}

  void read(const SExpr& cmd) {
    if (cmd.k != SExpr::K::List || cmd.kids.empty() || cmd.kids[0].k != SExpr::K::Atom)
      fail(Err::Syntax, cmd.loc.str() + ": expected a command");
    const std::string& head = cmd.kids[0].atom;
    if (head == "declare-datatype") return declare_datatype(cmd);
    if (head == "declare-const") return declare_const(cmd);
    if (head == "declare-fun") return declare_fun(cmd);
    if (head == "define-fun") return define_fun(cmd);
    if (head == "assert") return do_assert(cmd);
    if (head == "x-interpret-const") return x_interpret_const(cmd);
    if (head == "x-interpret-pred") return x_interpret_pred(cmd);
    if (head == "x-interpret-fun") return x_interpret_fun(cmd);
    if (head == "x-ground") return simple(cmd, Command::Type::XGround);
    if (head == "check-sat") return simple(cmd, Command::Type::CheckSat);
    if (head == "get-model") return simple(cmd, Command::Type::GetModel);
    if (head == "echo") return simple(cmd, Command::Type::Echo);
    if (head == "set-logic" || head == "set-info" || head == "set-option" || head == "exit")
      return simple(cmd, Command::Type::Passthrough);
    if (head == "push" || head == "pop" || head == "let" || head == "match" || head == "xor" ||
        head == "declare-sort" || head == "define-sort" || head == "declare-datatypes")
      fail(Err::UnsupportedCommand, cmd.loc.str() + ": unsupported construct: " + head);
    fail(Err::UnsupportedCommand, cmd.loc.str() + ": unknown command: " + head);
  }

 private:
  Script& script_;
  TermStore& store_;
  std::map<std::string, Macro> macros_;

  // --- helpers ---

  void push(Command c) { script_.commands.push_back(std::move(c)); }

  Command base(const SExpr& cmd, Command::Type type) {
    Command c;
    c.type = type;
    c.loc = cmd.loc;
    c.text = sexpr_text(cmd);
    return c;
  }

  void simple(const SExpr& cmd, Command::Type type) { push(base(cmd, type)); }

  const std::string& symbol(const SExpr& e, const char* what) {
    if (e.k != SExpr::K::Atom)
      fail(Err::Syntax, e.loc.str() + ": expected " + std::string(what));
    if (TermStore::reserved_name(e.atom))
      fail(Err::Syntax, e.loc.str() + ": names starting with '.' or '@' are reserved: " + e.atom);
    if (is_numeral(e.atom) || is_decimal(e.atom))
      fail(Err::Syntax, e.loc.str() + ": expected " + std::string(what) + ", got a literal");
    return e.atom;
  }

  const Sort* sort_of(const SExpr& e) {
    if (e.k != SExpr::K::Atom) fail(Err::Syntax, e.loc.str() + ": expected a sort");
    const Sort* s = store_.find_sort(e.atom);
    if (!s) fail(Err::UnknownSort, e.loc.str() + ": unknown sort " + e.atom);
    return s;
  }

  void check_fresh(const SExpr& e, const std::string& name) {
    if (store_.find_fun(name) || store_.find_id(name) || macros_.count(name) ||
        store_.find_sort(name))
      fail(Err::Syntax, e.loc.str() + ": symbol already declared: " + name);
  }

  std::vector<const Term*> sorted_vars(const SExpr& e) {
    if (e.k != SExpr::K::List || e.kids.empty())
      fail(Err::Syntax, e.loc.str() + ": expected a non-empty sorted-variable list");
    std::vector<const Term*> vars;
    for (const auto& b : e.kids) {
      if (b.k != SExpr::K::List || b.kids.size() != 2)
        fail(Err::Syntax, b.loc.str() + ": expected (name Sort)");
      vars.push_back(store_.var(symbol(b.kids[0], "a variable name"), sort_of(b.kids[1])));
    }
    return vars;
  }

  // --- terms ---

  using Env = std::vector<const Term*>;  // visible bound variables, innermost last

  const Term* lookup_var(const Env& env, const std::string& name) {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
      if ((*it)->name == name) return *it;
    return nullptr;
  }

  const Term* parse_term(const SExpr& e, Env& env) {
    try {
      return parse_term_inner(e, env);
    } catch (const Error& err) {
      std::string msg = err.what();
      // prefix the location once; nested failures already carry one
      if (!msg.empty() && std::isdigit(static_cast<unsigned char>(msg[0]))) throw;
      fail(err.code(), e.loc.str() + ": " + msg);
    }
  }

  const Term* parse_atom(const SExpr& e, Env& env) {
    const std::string& s = e.atom;
    if (is_numeral(s)) return store_.numeral(Rational::from_int_string(s), store_.int_sort());
    if (is_decimal(s)) return store_.numeral(Rational::from_decimal_string(s), store_.real_sort());
    if (TermStore::reserved_name(s))
      fail(Err::Syntax, e.loc.str() + ": names starting with '.' or '@' are reserved: " + s);
    if (const Term* v = lookup_var(env, s)) return v;
    if (const Term* id = store_.find_id(s)) return id;
    if (const FuncSym* fn = store_.find_fun(s)) {
      if (!fn->arg_sorts.empty())
        fail(Err::Sort, e.loc.str() + ": " + s + " expects arguments");
      return store_.app(fn, {});
    }
    auto mit = macros_.find(s);
    if (mit != macros_.end()) return expand_macro(e, mit->second, {});
    fail(Err::UndeclaredSymbol, e.loc.str() + ": undeclared symbol " + s);
  }

  const Term* expand_macro(const SExpr& e, const Macro& m, const std::vector<const Term*>& args) {
    if (args.size() != m.params.size())
      fail(Err::Sort, e.loc.str() + ": wrong number of arguments for defined symbol");
    std::set<std::string> used;
    for (auto* a : args)
      for (auto* v : free_variables(a)) used.insert(v->name);
    const Term* body = rename_shadowed(store_, m.body, used);
    std::map<const Term*, const Term*> subst_map;
    for (size_t i = 0; i < args.size(); ++i) {
      if (args[i]->sort != m.params[i]->sort)
        fail(Err::Sort, e.loc.str() + ": argument sort mismatch in defined symbol application");
      subst_map[m.params[i]] = args[i];
    }
    return substitute(store_, body, subst_map);
  }

  const Term* chain_cmp(CmpOp op, const std::vector<const Term*>& args) {
    std::vector<const Term*> cmps;
    for (size_t i = 0; i + 1 < args.size(); ++i)
      cmps.push_back(store_.cmp(op, args[i], args[i + 1]));
    return store_.conj(std::move(cmps));
  }

  const Term* parse_term_inner(const SExpr& e, Env& env) {
    if (e.k == SExpr::K::Str) fail(Err::Syntax, e.loc.str() + ": unexpected string literal");
    if (e.k == SExpr::K::Atom) return parse_atom(e, env);
    if (e.kids.empty() || e.kids[0].k != SExpr::K::Atom)
      fail(Err::Syntax, e.loc.str() + ": expected an operator");
    const std::string& head = e.kids[0].atom;

    if (head == "let" || head == "match" || head == "xor" || head == "ite" || head == "distinct")
      fail(Err::UnsupportedCommand, e.loc.str() + ": unsupported construct: " + head);

    if (head == "forall" || head == "exists" || head == "x-count") {
      if (e.kids.size() != 3)
        fail(Err::Syntax, e.loc.str() + ": " + head + " expects bindings and a body");
      std::vector<const Term*> vars = sorted_vars(e.kids[1]);
      size_t mark = env.size();
      for (auto* v : vars) env.push_back(v);
      const Term* body = parse_term(e.kids[2], env);
      env.resize(mark);
      if (head == "x-count") return store_.count(std::move(vars), body);
      if (head == "forall") return store_.forall(std::move(vars), body);
      // exists ys: b  ==  not forall ys: not b
      return store_.negation(store_.forall(std::move(vars), store_.negation(body)));
    }

    std::vector<const Term*> args;
    for (size_t i = 1; i < e.kids.size(); ++i) args.push_back(parse_term(e.kids[i], env));

    auto need = [&](size_t n) {
      if (args.size() < n)
        fail(Err::Syntax, e.loc.str() + ": " + head + " expects at least " +
                              std::to_string(n) + " arguments");
    };

    if (head == "not") {
      if (args.size() != 1) fail(Err::Syntax, e.loc.str() + ": not expects one argument");
      return store_.negation(args[0]);
    }
    if (head == "and") {
      need(1);
      return store_.conj(std::move(args));
    }
    if (head == "or") {  // not (and (not a) ...)
      need(1);
      std::vector<const Term*> negs;
      for (auto* a : args) negs.push_back(store_.negation(a));
      return store_.negation(store_.conj(std::move(negs)));
    }
    if (head == "=>") {  // right associative; a => b  ==  not (a and not b)
      need(2);
      const Term* acc = args.back();
      for (size_t i = args.size() - 1; i-- > 0;)
        acc = store_.negation(store_.conj({args[i], store_.negation(acc)}));
      return acc;
    }
    if (head == "=") {
      need(2);
      return chain_cmp(CmpOp::Eq, args);
    }
    if (head == "<") { need(2); return chain_cmp(CmpOp::Lt, args); }
    if (head == "<=") { need(2); return chain_cmp(CmpOp::Le, args); }
    if (head == ">=") { need(2); return chain_cmp(CmpOp::Ge, args); }
    if (head == ">") { need(2); return chain_cmp(CmpOp::Gt, args); }
    if (head == "+" || head == "*" || head == "-") {
      need(1);
      if (head == "-" && args.size() == 1 && args[0]->is_numeral())
        return store_.numeral(-*args[0]->value, args[0]->sort);
      FuncSym::Builtin b = head == "+" ? FuncSym::Builtin::Add
                         : head == "*" ? FuncSym::Builtin::Mul
                                       : FuncSym::Builtin::Sub;
      if (b != FuncSym::Builtin::Sub && args.size() < 2)
        fail(Err::Syntax, e.loc.str() + ": " + head + " expects at least two arguments");
      const FuncSym* fn = store_.builtin_arith(b, args[0]->sort);
      return store_.app(fn, std::move(args));
    }

    if (TermStore::reserved_name(head))
      fail(Err::Syntax, e.loc.str() + ": names starting with '.' or '@' are reserved: " + head);
    if (const FuncSym* fn = store_.find_fun(head)) return store_.app(fn, std::move(args));
    auto mit = macros_.find(head);
    if (mit != macros_.end()) return expand_macro(e, mit->second, args);
    fail(Err::UndeclaredSymbol, e.loc.str() + ": undeclared symbol " + head);
  }

  // --- id values for interpretations ---

  const Term* parse_id_value(const SExpr& e, const Sort* expected) {
    Env empty;
    const Term* t = nullptr;
    if (e.k == SExpr::K::List && e.kids.size() == 2 && e.kids[0].is_atom("-"))
      t = parse_term(e, empty);
    else if (e.k == SExpr::K::Atom)
      t = parse_atom(e, empty);
    if (!t || !t->is_id())
      fail(Err::Syntax, e.loc.str() + ": expected an id or a literal");
    if (t->sort != expected)
      fail(Err::Sort, e.loc.str() + ": expected a value of sort " + expected->name + ", got " +
                          t->sort->name);
    return t;
  }

  std::vector<const Term*> parse_id_tuple(const SExpr& e, const std::vector<const Sort*>& sorts) {
    std::vector<const SExpr*> items;
    if (e.k == SExpr::K::List) {
      for (const auto& k : e.kids) items.push_back(&k);
    } else {
      items.push_back(&e);  // a 1-tuple may be written without parentheses
    }
    if (items.size() != sorts.size())
      fail(Err::Syntax, e.loc.str() + ": tuple arity mismatch, expected " +
                            std::to_string(sorts.size()));
    std::vector<const Term*> out;
    for (size_t i = 0; i < items.size(); ++i) out.push_back(parse_id_value(*items[i], sorts[i]));
    return out;
  }

  // --- commands ---

  void declare_datatype(const SExpr& cmd) {
    if (cmd.kids.size() != 3)
      fail(Err::Syntax, cmd.loc.str() + ": declare-datatype expects a name and constructors");
    const std::string& name = symbol(cmd.kids[1], "a sort name");
    check_fresh(cmd.kids[1], name);
    const SExpr& ctors = cmd.kids[2];
    if (ctors.k != SExpr::K::List || ctors.kids.empty())
      fail(Err::Syntax, ctors.loc.str() + ": expected a non-empty constructor list");
    std::vector<std::string> names;
    for (const auto& c : ctors.kids) {
      const SExpr* atom = &c;
      if (c.k == SExpr::K::List) {
        if (c.kids.size() != 1)
          fail(Err::UnsupportedCommand,
               c.loc.str() + ": only parameterless constructors are supported");
        atom = &c.kids[0];
      }
      const std::string& ctor = symbol(*atom, "a constructor name");
      check_fresh(*atom, ctor);
      names.push_back(ctor);
    }
    Command c = base(cmd, Command::Type::DeclareDatatype);
    c.sort = store_.declare_datatype(name, names);
    push(std::move(c));
  }

  void declare_const(const SExpr& cmd) {
    if (cmd.kids.size() != 3)
      fail(Err::Syntax, cmd.loc.str() + ": declare-const expects a name and a sort");
    const std::string& name = symbol(cmd.kids[1], "a symbol");
    check_fresh(cmd.kids[1], name);
    Command c = base(cmd, Command::Type::DeclareConst);
    c.fn = store_.declare_fun(name, {}, sort_of(cmd.kids[2]));
    push(std::move(c));
  }

  void declare_fun(const SExpr& cmd) {
    if (cmd.kids.size() != 4)
      fail(Err::Syntax, cmd.loc.str() + ": declare-fun expects a name, argument sorts and a sort");
    const std::string& name = symbol(cmd.kids[1], "a symbol");
    check_fresh(cmd.kids[1], name);
    if (cmd.kids[2].k != SExpr::K::List)
      fail(Err::Syntax, cmd.kids[2].loc.str() + ": expected a sort list");
    std::vector<const Sort*> args;
    for (const auto& s : cmd.kids[2].kids) args.push_back(sort_of(s));
    Command c = base(cmd, Command::Type::DeclareFun);
    c.fn = store_.declare_fun(name, std::move(args), sort_of(cmd.kids[3]));
    push(std::move(c));
  }

  void define_fun(const SExpr& cmd) {
    if (cmd.kids.size() != 5)
      fail(Err::Syntax,
           cmd.loc.str() + ": define-fun expects a name, parameters, a sort and a body");
    const std::string& name = symbol(cmd.kids[1], "a symbol");
    check_fresh(cmd.kids[1], name);
    std::vector<const Term*> params;
    if (cmd.kids[2].k != SExpr::K::List)
      fail(Err::Syntax, cmd.kids[2].loc.str() + ": expected a parameter list");
    if (!cmd.kids[2].kids.empty()) params = sorted_vars(cmd.kids[2]);
    const Sort* result = sort_of(cmd.kids[3]);
    Env env;
    for (auto* p : params) env.push_back(p);
    const Term* body = parse_term(cmd.kids[4], env);
    if (body->sort != result)
      fail(Err::Sort, cmd.loc.str() + ": define-fun body has sort " + body->sort->name +
                          ", declared " + result->name);
    macros_[name] = Macro{std::move(params), body};
    push(base(cmd, Command::Type::DefineFun));
  }

  void do_assert(const SExpr& cmd) {
    if (cmd.kids.size() != 2)
      fail(Err::Syntax, cmd.loc.str() + ": assert expects one term");
    Env env;
    const Term* t = parse_term(cmd.kids[1], env);
    if (!t->is_bool())
      fail(Err::Sort, cmd.loc.str() + ": asserted term must be Bool, got " + t->sort->name);
    Command c = base(cmd, Command::Type::Assert);
    c.term = t;
    push(std::move(c));
  }

  const FuncSym* interpreted_symbol(const SExpr& e) {
    const std::string& name = symbol(e, "a declared symbol");
    const FuncSym* fn = store_.find_fun(name);
    if (!fn) fail(Err::UndeclaredSymbol, e.loc.str() + ": undeclared symbol " + name);
    if (script_.structure.interps.count(fn))
      fail(Err::Syntax, e.loc.str() + ": " + name + " is already interpreted");
    return fn;
  }

  void x_interpret_const(const SExpr& cmd) {
    if (cmd.kids.size() != 3)
      fail(Err::Syntax, cmd.loc.str() + ": x-interpret-const expects a symbol and a value");
    const FuncSym* fn = interpreted_symbol(cmd.kids[1]);
    if (!fn->arg_sorts.empty())
      fail(Err::Sort, cmd.loc.str() + ": " + fn->name + " is not a constant");
    Interp in;
    in.points[{}] = parse_id_value(cmd.kids[2], fn->result);
    script_.structure.interps[fn] = std::move(in);
    Command c = base(cmd, Command::Type::XInterpretConst);
    c.fn = fn;
    push(std::move(c));
  }

  void x_interpret_pred(const SExpr& cmd) {
    if (cmd.kids.size() < 3 || cmd.kids.size() > 4)
      fail(Err::Syntax,
           cmd.loc.str() + ": x-interpret-pred expects a symbol, an x-set and optionally x-unknown");
    const FuncSym* fn = interpreted_symbol(cmd.kids[1]);
    if (!fn->is_predicate())
      fail(Err::Sort, cmd.loc.str() + ": " + fn->name + " is not a predicate");
    const SExpr& set = cmd.kids[2];
    if (set.k != SExpr::K::List || set.kids.empty() || !set.kids[0].is_atom("x-set"))
      fail(Err::Syntax, set.loc.str() + ": expected (x-set (tuple) ...)");
    Interp in;
    in.default_value = store_.truth(false);  // closed world over the listed atoms
    for (size_t i = 1; i < set.kids.size(); ++i)
      in.points[parse_id_tuple(set.kids[i], fn->arg_sorts)] = store_.truth(true);
    if (cmd.kids.size() == 4) {
      const SExpr& unk = cmd.kids[3];
      if (unk.k != SExpr::K::List || unk.kids.empty() || !unk.kids[0].is_atom("x-unknown"))
        fail(Err::Syntax, unk.loc.str() + ": expected (x-unknown (tuple) ...)");
      for (size_t i = 1; i < unk.kids.size(); ++i) {
        auto tuple = parse_id_tuple(unk.kids[i], fn->arg_sorts);
        if (in.points.count(tuple))
          fail(Err::Syntax, unk.kids[i].loc.str() + ": tuple is both true and unknown");
        in.unknown.insert(std::move(tuple));
      }
    }
    script_.structure.interps[fn] = std::move(in);
    Command c = base(cmd, Command::Type::XInterpretPred);
    c.fn = fn;
    push(std::move(c));
  }

  void x_interpret_fun(const SExpr& cmd) {
    if (cmd.kids.size() < 3 || cmd.kids.size() > 4)
      fail(Err::Syntax,
           cmd.loc.str() + ": x-interpret-fun expects a symbol, an x-mapping and optionally x-else");
    const FuncSym* fn = interpreted_symbol(cmd.kids[1]);
    const SExpr& mapping = cmd.kids[2];
    if (mapping.k != SExpr::K::List || mapping.kids.empty() ||
        !mapping.kids[0].is_atom("x-mapping"))
      fail(Err::Syntax, mapping.loc.str() + ": expected (x-mapping ((args) value) ...)");
    Interp in;
    for (size_t i = 1; i < mapping.kids.size(); ++i) {
      const SExpr& entry = mapping.kids[i];
      if (entry.k != SExpr::K::List || entry.kids.size() != 2)
        fail(Err::Syntax, entry.loc.str() + ": expected ((args) value)");
      auto tuple = parse_id_tuple(entry.kids[0], fn->arg_sorts);
      const Term* val = parse_id_value(entry.kids[1], fn->result);
      auto [it, fresh] = in.points.try_emplace(tuple, val);
      if (!fresh && it->second != val)
        fail(Err::Syntax, entry.loc.str() + ": conflicting values for one point");
    }
    if (cmd.kids.size() == 4) {
      const SExpr& els = cmd.kids[3];
      if (els.k != SExpr::K::List || els.kids.size() != 2 || !els.kids[0].is_atom("x-else"))
        fail(Err::Syntax, els.loc.str() + ": expected (x-else value)");
      in.default_value = parse_id_value(els.kids[1], fn->result);
    }
    script_.structure.interps[fn] = std::move(in);
    Command c = base(cmd, Command::Type::XInterpretFun);
    c.fn = fn;
    push(std::move(c));
  }
};

}  // namespace

Script parse_script(const std::string& text) {
  Script script;
  script.store = std::make_shared<TermStore>();
  Lexer lexer(text);
  Reader reader(script);
  for (const SExpr& cmd : lexer.parse_all()) reader.read(cmd);
  return script;
}

void preprocess(Script& script) {
  TermStore& store = *script.store;
  for (auto& c : script.commands) {
    if (c.type != Command::Type::Assert) continue;
    const Term* t = c.term;
    t = unnest(store, t);
    t = rename_shadowed(store, t);
    t = simplify(store, t);
    c.term = t;
  }
  script.preprocessed = true;
}

std::string print_script(const Script& script) {
  std::ostringstream os;
  for (const auto& c : script.commands) {
    if (c.type == Command::Type::Assert && script.preprocessed)
      os << "(assert " << to_smt(c.term) << ")\n";
    else
      os << c.text << "\n";
  }
  return os.str();
}

}  // namespace rground
