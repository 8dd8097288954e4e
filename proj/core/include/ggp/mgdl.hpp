#pragma once

#include <map>
#include <string>
#include <vector>

#include "ggp/rulesheet.hpp"

namespace ggp {

struct ConformanceWitness {
  Rule rule;
  Literal literal;
  Term unifying_head;
};

struct ConformanceResult {
  bool conforming = true;
  std::vector<ConformanceWitness> witnesses;
};

/// Basic conformance check: scans non-reserved rules for body literals that
/// unify with some rule head while binding a variable to a complex
/// expression. Such sheets may diverge between GDL and the
/// constants-only binding semantics, so the verdict is inconclusive.
ConformanceResult check_conformance(const RuleSheet& sheet);

struct MangledName {
  std::string name;
  int flat_arity = 0;

  bool operator==(const MangledName& other) const = default;
};

struct FlatSentence {
  MangledName name;
  std::vector<Term> flat_args;
};

/// Flattens an atomic sentence into a relation name that reflects all terms
/// and parentheses, read left to right, plus the in-order list of leaf terms.
FlatSentence mangle(const Term& sentence);

/// Rebuilds the nested sentence from a shape template and flat leaves.
Term unflatten(const Term& shape, const std::vector<Term>& leaves);

enum class RelationKind : uint8_t { kStatic, kDynamic, kRule, kDoes };

/// A rule sheet after true-stripping, or-splitting and flattening. All
/// sentences are flat: the functor is a mangled relation name and every
/// argument is a constant or a variable.
struct NormalizedSheet {
  RuleSheet sheet;
  std::map<std::string, RelationKind> kinds;
  std::map<std::string, Term> shapes;  // mangled name -> original nested shape

  RelationKind kind_of(const std::string& relation) const;
};

NormalizedSheet normalize(const RuleSheet& sheet);

}  // namespace ggp
