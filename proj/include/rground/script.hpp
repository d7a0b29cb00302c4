#ifndef RGROUND_SCRIPT_HPP
#define RGROUND_SCRIPT_HPP

#include <memory>
#include <string>
#include <vector>

#include "rground/term.hpp"

namespace rground {

struct Location {
  int line = 0;
  int col = 0;
  std::string str() const { return std::to_string(line) + ":" + std::to_string(col); }
};

struct Command {
  enum class Type {
    DeclareDatatype,
    DeclareConst,
    DeclareFun,
    DefineFun,
    Assert,
    XInterpretConst,
    XInterpretPred,
    XInterpretFun,
    XGround,
    CheckSat,
    GetModel,
    Echo,
    Passthrough,
  };

  Type type;
  Location loc;
  const Sort* sort = nullptr;    // DeclareDatatype
  const FuncSym* fn = nullptr;   // declarations and interpretations
  const Term* term = nullptr;    // Assert (replaced in place by preprocessing)
  std::string text;              // canonical source text of the command
};

// A parsed script: the command sequence plus the accumulated signature (in
// the TermStore) and input structure. Assertions stay unground; grounding is
// delayed until check-sat / x-ground.
struct Script {
  std::shared_ptr<TermStore> store;
  Structure structure;
  std::vector<Command> commands;
  bool preprocessed = false;

  std::vector<const Term*> assertions() const {
    std::vector<const Term*> out;
    for (const auto& c : commands)
      if (c.type == Command::Type::Assert) out.push_back(c.term);
    return out;
  }
};

Script parse_script(const std::string& text);

// Inline-expanded assertions are further unnested, shadow-renamed and
// simplified, in place.
void preprocess(Script& script);

// Canonical text of the parsed commands (pre-preprocessing round trips).
std::string print_script(const Script& script);

}  // namespace rground

#endif
