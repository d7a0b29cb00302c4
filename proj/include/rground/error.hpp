#ifndef RGROUND_ERROR_HPP
#define RGROUND_ERROR_HPP

#include <stdexcept>
#include <string>

namespace rground {

enum class Err {
  Syntax,
  Sort,
  UndeclaredSymbol,
  UnsupportedCommand,
  MissingInterpretation,
  InfiniteEvaluation,
  UnboundVariable,
  NonBooleanNestingContext,
  UnknownAttribute,
  UnknownSort,
  UnknownSymbol,
  SymbolicSelection,
  AttributeClash,
  SchemaMismatch,
  InfiniteLeft,
  InfiniteRelation,
  InfiniteTU,
  InfiniteV,
  NonGroundable,
  CountNotFinite,
  SearchSpaceTooLarge,
  Io,
  SolverSpawn,
  Timeout,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

}  // namespace rground

#endif
