#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace ggp {

struct GdlError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A GDL term. Variables are stored without the leading "?" of the surface
/// syntax; constants and functors are case-normalized to lower case.
struct Term {
  enum class Kind : uint8_t { kConstant, kVariable, kCompound };

  Kind kind = Kind::kConstant;
  std::string symbol;
  std::vector<Term> args;

  static Term constant(std::string s) { return Term{Kind::kConstant, std::move(s), {}}; }
  static Term variable(std::string s) { return Term{Kind::kVariable, std::move(s), {}}; }
  static Term compound(std::string functor, std::vector<Term> a) {
    return Term{Kind::kCompound, std::move(functor), std::move(a)};
  }

  bool is_constant() const { return kind == Kind::kConstant; }
  bool is_variable() const { return kind == Kind::kVariable; }
  bool is_compound() const { return kind == Kind::kCompound; }
  bool is_atomic_sentence() const { return !is_variable(); }
  int arity() const { return static_cast<int>(args.size()); }

  bool ground() const;
  void collect_variables(std::vector<std::string>& out) const;

  /// Canonical text form: "(f a ?x)" for compounds, bare symbol otherwise.
  std::string to_string() const;

  bool operator==(const Term& other) const;
  bool operator<(const Term& other) const;
};

/// Parses one term from its canonical text form.
Term parse_term(const std::string& text);

std::ostream& operator<<(std::ostream& os, const Term& t);

/// Variable substitution used by unification. Bindings may chain through
/// other variables; resolve() follows them to a fixed point.
class Bindings {
 public:
  bool bind(const std::string& var, const Term& value);
  const Term* lookup(const std::string& var) const;
  Term resolve(const Term& t) const;
  const std::unordered_map<std::string, Term>& map() const { return map_; }

 private:
  std::unordered_map<std::string, Term> map_;
};

/// Standard syntactic unification with occurs check. Returns false and
/// leaves `b` in an unspecified state on failure.
bool unify(const Term& a, const Term& b, Bindings& b_out);

/// Renames every variable "v" to "v<suffix>"; used to standardize rules apart.
Term rename_variables(const Term& t, const std::string& suffix);

/// Parses a real number per the board-extension restriction: optional sign,
/// digits, optional "."-delimited fraction. Returns nullopt otherwise.
std::optional<double> parse_coordinate(const std::string& symbol);

uint64_t hash_term(const Term& t);

}  // namespace ggp
