#pragma once

#include <optional>
#include <string>
#include <vector>

#include "term.hpp"

namespace llfp {

struct Pos {
  int line = 0;
  int col = 0;
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, Pos pos)
      : std::runtime_error(msg + " at " + std::to_string(pos.line) + ":" + std::to_string(pos.col)),
        pos(pos) {}
  Pos pos;
};

struct SourceDecl {
  std::string name;
  Term classifier;  // empty for `pred` declarations
  bool isPred = false;
  Pos pos;
};

struct Binding {
  std::string name;
  Term type;
};

struct Directive {
  enum class Kind { Check, CheckTy, Normalize };
  Kind kind;
  std::vector<Binding> ctx;
  Term subject;
  Term classifier;  // empty for Normalize; tType() for CheckTy
  Pos pos;
  std::optional<std::string> expectFail;  // error class from a %expect-fail marker
};

struct SourceItem {
  // exactly one of decl/directive is set
  std::optional<SourceDecl> decl;
  std::optional<Directive> directive;
};

struct SourceFile {
  std::string name;
  std::vector<SourceItem> items;
};

// Parses a whole file. `extraPredicates` are predicate names known before
// parsing (the built-in oracles); `pred` declarations in the file add more.
SourceFile parseFile(const std::string& text, const std::string& name = "<input>",
                     const std::vector<std::string>& extraPredicates = {});

// Term-only entry point for tests and tools. `constFamilies` names the known
// family-level constants; every other identifier resolves to a bound
// variable from `scope` (innermost last) or an object constant.
Term parseTerm(const std::string& text, const std::vector<std::string>& constFamilies,
               const std::vector<std::string>& scope = {},
               const std::vector<std::string>& predicates = {});

// Deterministic printer; parseTerm(printTerm(t)) is alpha-equivalent to t.
// `scope` supplies names for free variables, innermost last.
std::string printTerm(Term t, const std::vector<std::string>& scope = {});

std::string printBindings(const std::vector<Binding>& ctx);

}  // namespace llfp
