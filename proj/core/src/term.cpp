#include "ggp/term.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>

namespace ggp {

bool Term::ground() const {
  if (is_variable()) return false;
  for (const Term& a : args) {
    if (!a.ground()) return false;
  }
  return true;
}

void Term::collect_variables(std::vector<std::string>& out) const {
  if (is_variable()) {
    if (std::find(out.begin(), out.end(), symbol) == out.end()) out.push_back(symbol);
    return;
  }
  for (const Term& a : args) a.collect_variables(out);
}

std::string Term::to_string() const {
  if (is_variable()) return "?" + symbol;
  if (is_constant()) return symbol;
  std::string out = "(" + symbol;
  for (const Term& a : args) {
    out.push_back(' ');
    out += a.to_string();
  }
  out.push_back(')');
  return out;
}

bool Term::operator==(const Term& other) const {
  return kind == other.kind && symbol == other.symbol && args == other.args;
}

bool Term::operator<(const Term& other) const {
  if (kind != other.kind) return kind < other.kind;
  if (symbol != other.symbol) return symbol < other.symbol;
  return args < other.args;
}

std::ostream& operator<<(std::ostream& os, const Term& t) { return os << t.to_string(); }

namespace {

struct TermParser {
  const std::string& in;
  size_t pos = 0;

  void skip_ws() {
    while (pos < in.size() && std::isspace(static_cast<unsigned char>(in[pos]))) ++pos;
  }

  std::string atom() {
    size_t start = pos;
    while (pos < in.size() && !std::isspace(static_cast<unsigned char>(in[pos])) &&
           in[pos] != '(' && in[pos] != ')') {
      ++pos;
    }
    if (pos == start) throw GdlError("expected an atom in term: " + in);
    std::string s = in.substr(start, pos - start);
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
  }

  Term term() {
    skip_ws();
    if (pos >= in.size()) throw GdlError("unexpected end of term: " + in);
    if (in[pos] == '(') {
      ++pos;
      skip_ws();
      std::string functor = atom();
      std::vector<Term> args;
      for (;;) {
        skip_ws();
        if (pos >= in.size()) throw GdlError("unbalanced parentheses in term: " + in);
        if (in[pos] == ')') {
          ++pos;
          break;
        }
        args.push_back(term());
      }
      if (args.empty()) return Term::constant(std::move(functor));
      return Term::compound(std::move(functor), std::move(args));
    }
    std::string s = atom();
    if (s.size() > 1 && s[0] == '?') return Term::variable(s.substr(1));
    return Term::constant(std::move(s));
  }
};

}  // namespace

Term parse_term(const std::string& text) {
  TermParser p{text};
  Term t = p.term();
  p.skip_ws();
  if (p.pos != text.size()) throw GdlError("trailing content in term: " + text);
  return t;
}

bool Bindings::bind(const std::string& var, const Term& value) {
  return map_.emplace(var, value).second;
}

const Term* Bindings::lookup(const std::string& var) const {
  auto it = map_.find(var);
  return it == map_.end() ? nullptr : &it->second;
}

Term Bindings::resolve(const Term& t) const {
  if (t.is_variable()) {
    const Term* v = lookup(t.symbol);
    return v ? resolve(*v) : t;
  }
  if (t.is_constant()) return t;
  std::vector<Term> args;
  args.reserve(t.args.size());
  for (const Term& a : t.args) args.push_back(resolve(a));
  return Term::compound(t.symbol, std::move(args));
}

namespace {

bool occurs(const std::string& var, const Term& t, const Bindings& b) {
  if (t.is_variable()) {
    if (t.symbol == var) return true;
    const Term* v = b.lookup(t.symbol);
    return v && occurs(var, *v, b);
  }
  for (const Term& a : t.args) {
    if (occurs(var, a, b)) return true;
  }
  return false;
}

}  // namespace

bool unify(const Term& a, const Term& b, Bindings& env) {
  if (a.is_variable()) {
    const Term* v = env.lookup(a.symbol);
    if (v) return unify(*v, b, env);
    Term rb = env.resolve(b);
    if (rb.is_variable() && rb.symbol == a.symbol) return true;
    if (occurs(a.symbol, rb, env)) return false;
    env.bind(a.symbol, rb);
    return true;
  }
  if (b.is_variable()) return unify(b, a, env);
  if (a.kind != b.kind || a.symbol != b.symbol || a.args.size() != b.args.size()) return false;
  for (size_t i = 0; i < a.args.size(); ++i) {
    if (!unify(a.args[i], b.args[i], env)) return false;
  }
  return true;
}

Term rename_variables(const Term& t, const std::string& suffix) {
  if (t.is_variable()) return Term::variable(t.symbol + suffix);
  if (t.is_constant()) return t;
  std::vector<Term> args;
  args.reserve(t.args.size());
  for (const Term& a : t.args) args.push_back(rename_variables(a, suffix));
  return Term::compound(t.symbol, std::move(args));
}

std::optional<double> parse_coordinate(const std::string& symbol) {
  if (symbol.empty()) return std::nullopt;
  size_t i = 0;
  if (symbol[i] == '+' || symbol[i] == '-') ++i;
  size_t digits = 0;
  while (i < symbol.size() && std::isdigit(static_cast<unsigned char>(symbol[i]))) {
    ++i;
    ++digits;
  }
  if (digits == 0) return std::nullopt;
  if (i < symbol.size()) {
    if (symbol[i] != '.') return std::nullopt;
    ++i;
    size_t frac = 0;
    while (i < symbol.size() && std::isdigit(static_cast<unsigned char>(symbol[i]))) {
      ++i;
      ++frac;
    }
    if (frac == 0 || i != symbol.size()) return std::nullopt;
  }
  return std::stod(symbol);
}

namespace {

// splitmix64; fixed constants keep digests stable across platforms
uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

uint64_t hash_bytes(const std::string& s, uint64_t seed) {
  uint64_t h = seed;
  for (unsigned char c : s) h = mix64(h ^ c);
  return h;
}

}  // namespace

uint64_t hash_term(const Term& t) {
  uint64_t h = hash_bytes(t.symbol, static_cast<uint64_t>(t.kind) + 0x51ed270b4d2f17c5ull);
  for (const Term& a : t.args) h = mix64(h ^ hash_term(a));
  return h;
}

}  // namespace ggp
