#include "ggp/kif.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace ggp {

namespace {

const std::set<std::string> kExtensionFunctors = {
    "boardboundaries", "boardrelation", "boardfunctor", "boardpattern",
    "playfunctor", "playpattern"};

struct SexprReader {
  const std::string& in;
  size_t pos = 0;

  void skip_ws_and_comments() {
    for (;;) {
      while (pos < in.size() && std::isspace(static_cast<unsigned char>(in[pos]))) ++pos;
      if (pos < in.size() && in[pos] == ';') {
        while (pos < in.size() && in[pos] != '\n') ++pos;
        continue;
      }
      return;
    }
  }

  bool eof() {
    skip_ws_and_comments();
    return pos >= in.size();
  }

  std::string atom() {
    size_t start = pos;
    while (pos < in.size() && !std::isspace(static_cast<unsigned char>(in[pos])) &&
           in[pos] != '(' && in[pos] != ')' && in[pos] != ';') {
      ++pos;
    }
    std::string s = in.substr(start, pos - start);
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
  }

  Term expr() {
    skip_ws_and_comments();
    if (pos >= in.size()) throw GdlError("unexpected end of input");
    if (in[pos] == ')') throw GdlError("unbalanced parentheses: stray ')'");
    if (in[pos] == '(') {
      ++pos;
      skip_ws_and_comments();
      if (pos >= in.size()) throw GdlError("unbalanced parentheses: unterminated '('");
      if (in[pos] == '(') throw GdlError("expected a functor after '('");
      std::string functor = atom();
      if (functor.empty()) throw GdlError("expected a functor after '('");
      std::vector<Term> args;
      for (;;) {
        skip_ws_and_comments();
        if (pos >= in.size()) throw GdlError("unbalanced parentheses: unterminated '('");
        if (in[pos] == ')') {
          ++pos;
          break;
        }
        args.push_back(expr());
      }
      if (args.empty()) return Term::constant(std::move(functor));
      return Term::compound(std::move(functor), std::move(args));
    }
    std::string s = atom();
    if (s.empty()) throw GdlError("expected an atom");
    if (s.size() > 1 && s[0] == '?') return Term::variable(s.substr(1));
    if (s == "?") throw GdlError("bare '?' is not a valid variable");
    return Term::constant(std::move(s));
  }
};

Literal to_literal(const Term& t) {
  if (t.is_variable()) throw GdlError("a bare variable cannot be a body literal");
  if (t.is_compound() && t.symbol == "not") {
    if (t.args.size() != 1) throw GdlError("not/1 expects exactly one argument");
    const Term& inner = t.args[0];
    if (inner.is_variable()) throw GdlError("negated literal cannot be a bare variable");
    Literal l = Literal::negative(inner);
    l.is_distinct = inner.is_compound() && inner.symbol == "distinct";
    return l;
  }
  Literal l = Literal::positive(t);
  if (t.is_compound() && t.symbol == "distinct") {
    if (t.args.size() != 2) throw GdlError("distinct expects exactly 2 arguments");
    l.is_distinct = true;
  }
  return l;
}

void collect_positive_vars(const Literal& l, std::vector<std::string>& out) {
  if (l.negated || l.is_distinct) return;
  if (l.sentence.is_compound() && l.sentence.symbol == "or") {
    // a variable is safely bound by an or-literal only if every branch binds it
    std::vector<std::string> common;
    bool first = true;
    for (const Term& branch : l.sentence.args) {
      std::vector<std::string> vars;
      collect_positive_vars(to_literal(branch), vars);
      if (first) {
        common = vars;
        first = false;
      } else {
        std::vector<std::string> kept;
        for (const auto& v : common) {
          if (std::find(vars.begin(), vars.end(), v) != vars.end()) kept.push_back(v);
        }
        common = kept;
      }
    }
    for (const auto& v : common) out.push_back(v);
    return;
  }
  l.sentence.collect_variables(out);
}

void check_rule_safety(const Rule& rule) {
  std::vector<std::string> bound;
  for (const Literal& l : rule.body) collect_positive_vars(l, bound);

  auto require_bound = [&](const Term& t, const char* what) {
    std::vector<std::string> vars;
    t.collect_variables(vars);
    for (const auto& v : vars) {
      if (std::find(bound.begin(), bound.end(), v) == bound.end()) {
        throw GdlError(std::string("rule safety violation: variable ?") + v + " in " + what +
                       " of rule " + rule.head.to_string() +
                       " does not appear in any positive body literal");
      }
    }
  };

  require_bound(rule.head, "the head");
  for (const Literal& l : rule.body) {
    if (l.negated || l.is_distinct) require_bound(l.sentence, "a negated/distinct literal");
  }
}

std::string functor_key(const Term& t) {
  return t.symbol + "/" + std::to_string(t.args.size());
}

// Inner sentences of init/next declare the dynamic relations.
std::optional<std::string> dynamic_key_of(const Term& sentence) {
  if (!sentence.is_compound()) return std::nullopt;
  if (sentence.symbol == "init" || sentence.symbol == "next") {
    if (sentence.args.size() != 1)
      throw GdlError(sentence.symbol + " expects exactly one argument: " + sentence.to_string());
    return functor_key(sentence.args[0]);
  }
  return std::nullopt;
}

}  // namespace

std::optional<BoardSpec> parse_board_extension(const RuleSheet& sheet) {
  if (sheet.extension_sentences.empty()) return std::nullopt;

  std::map<std::string, std::vector<Term>> by_functor;
  for (const Term& t : sheet.extension_sentences) {
    if (!t.ground())
      throw GdlError("board extension sentence must be ground: " + t.to_string());
    by_functor[t.symbol].push_back(t);
  }

  auto single = [&](std::initializer_list<std::string> names) -> const Term& {
    const Term* found = nullptr;
    for (const auto& n : names) {
      auto it = by_functor.find(n);
      if (it == by_functor.end()) continue;
      if (it->second.size() > 1 || found)
        throw GdlError("duplicate board extension relation: " + n);
      found = &it->second.front();
    }
    if (!found)
      throw GdlError("incomplete board extension: missing " + *names.begin());
    return *found;
  };

  const Term& bounds = single({"boardboundaries"});
  const Term& board_rel = single({"boardrelation", "boardfunctor"});
  const Term& board_pat = single({"boardpattern"});
  const Term& play_rel = single({"playfunctor"});
  const Term& play_pat = single({"playpattern"});

  BoardSpec spec;
  if (bounds.args.size() != 2)
    throw GdlError("boardboundaries expects exactly 2 arguments");
  auto lo = parse_coordinate(bounds.args[0].symbol);
  auto hi = parse_coordinate(bounds.args[1].symbol);
  if (!lo || !hi)
    throw GdlError("boardboundaries arguments must be real numbers: " + bounds.to_string());
  if (*lo > *hi)
    throw GdlError("boardboundaries: d_min > d_max in " + bounds.to_string());
  spec.d_min = *lo;
  spec.d_max = *hi;

  auto pattern_of = [](const Term& t) {
    std::vector<BoardSpec::Slot> out;
    for (const Term& a : t.args) {
      if (a.symbol == "piece") out.push_back(BoardSpec::Slot::kPiece);
      else if (a.symbol == "dim") out.push_back(BoardSpec::Slot::kDim);
      else if (a.symbol == "skip") out.push_back(BoardSpec::Slot::kSkip);
      else throw GdlError("bad pattern symbol '" + a.symbol + "' in " + t.to_string());
    }
    return out;
  };

  if (board_rel.args.size() != 1 || play_rel.args.size() != 1)
    throw GdlError("boardrelation/playfunctor expect exactly 1 argument");
  spec.board_functor = board_rel.args[0].symbol;
  spec.play_functor = play_rel.args[0].symbol;
  spec.board_pattern = pattern_of(board_pat);
  spec.play_pattern = pattern_of(play_pat);

  auto count_slots = [](const std::vector<BoardSpec::Slot>& p, BoardSpec::Slot s) {
    return static_cast<int>(std::count(p.begin(), p.end(), s));
  };
  spec.n_dims = count_slots(spec.board_pattern, BoardSpec::Slot::kDim);
  if (count_slots(spec.board_pattern, BoardSpec::Slot::kPiece) != 1)
    throw GdlError("boardpattern must contain exactly one 'piece' entry");
  if (spec.n_dims < 1)
    throw GdlError("boardpattern must contain at least one 'dim' entry");
  if (count_slots(spec.play_pattern, BoardSpec::Slot::kPiece) != 1)
    throw GdlError("playpattern must contain exactly one 'piece' entry");
  if (count_slots(spec.play_pattern, BoardSpec::Slot::kDim) != spec.n_dims)
    throw GdlError("playpattern must contain exactly " + std::to_string(spec.n_dims) +
                   " 'dim' entries");

  // the named relations must appear elsewhere in the sheet with matching arity
  auto appears = [&sheet](const std::string& functor, size_t arity) {
    auto matches = [&](const Term& t) {
      if (t.symbol == functor && t.args.size() == arity) return true;
      if (t.symbol == "init" || t.symbol == "next" || t.symbol == "true" ||
          t.symbol == "not" || t.symbol == "legal" || t.symbol == "does") {
        for (const Term& a : t.args) {
          if (a.symbol == functor && a.args.size() == arity) return true;
        }
      }
      return false;
    };
    for (const Term& t : sheet.static_facts) {
      if (matches(t)) return true;
    }
    for (const Term& t : sheet.init_facts) {
      if (t.symbol == functor && t.args.size() == arity) return true;
    }
    for (const Rule& r : sheet.rules) {
      if (matches(r.head)) return true;
      for (const Literal& l : r.body) {
        if (matches(l.sentence)) return true;
        for (const Term& a : l.sentence.args) {
          if (matches(a)) return true;
        }
      }
    }
    return false;
  };
  if (!appears(spec.board_functor, spec.board_pattern.size()))
    throw GdlError("board extension names relation '" + spec.board_functor +
                   "/" + std::to_string(spec.board_pattern.size()) +
                   "' which does not appear elsewhere in the sheet");
  if (!appears(spec.play_functor, spec.play_pattern.size()))
    throw GdlError("board extension names relation '" + spec.play_functor +
                   "/" + std::to_string(spec.play_pattern.size()) +
                   "' which does not appear elsewhere in the sheet");
  return spec;
}

RuleSheet parse_kif(const std::string& text) {
  SexprReader reader{text};
  RuleSheet sheet;

  while (!reader.eof()) {
    Term t = reader.expr();
    if (t.is_variable())
      throw GdlError("top-level variable is not a valid sentence");
    if (t.is_compound() && t.symbol == "role") {
      if (t.args.size() != 1 || !t.args[0].is_constant())
        throw GdlError("role declaration expects one constant: " + t.to_string());
      sheet.roles.push_back(t.args[0].symbol);
      continue;
    }
    if (t.is_compound() && t.symbol == "<=") {
      if (t.args.empty()) throw GdlError("empty rule");
      Rule rule;
      rule.head = t.args[0];
      if (rule.head.is_variable()) throw GdlError("rule head cannot be a variable");
      for (size_t i = 1; i < t.args.size(); ++i) rule.body.push_back(to_literal(t.args[i]));
      check_rule_safety(rule);
      sheet.rules.push_back(std::move(rule));
      continue;
    }
    if (kExtensionFunctors.count(t.symbol)) {
      sheet.extension_sentences.push_back(std::move(t));
      continue;
    }
    if (t.is_compound() && t.symbol == "init") {
      if (t.args.size() != 1) throw GdlError("init expects exactly one argument");
      if (!t.args[0].ground())
        throw GdlError("init fact must be ground: " + t.to_string());
      sheet.init_facts.push_back(t.args[0]);
      continue;
    }
    if (!t.ground())
      throw GdlError("top-level sentence must be ground: " + t.to_string());
    sheet.static_facts.push_back(std::move(t));
  }

  // relation uniqueness: a functor/arity pair belongs to exactly one of
  // {static fact, dynamic fact, rule head}
  std::map<std::string, std::string> owner;
  auto claim = [&owner](const std::string& key, const std::string& cls) {
    auto [it, inserted] = owner.emplace(key, cls);
    if (!inserted && it->second != cls) {
      throw GdlError("relation " + key + " classified both as " + it->second + " and as " +
                     cls);
    }
  };
  for (const Term& t : sheet.static_facts) claim(functor_key(t), "static fact");
  for (const Term& t : sheet.init_facts) claim(functor_key(t), "dynamic fact");
  for (const Rule& r : sheet.rules) {
    if (auto dyn = dynamic_key_of(r.head)) {
      claim(*dyn, "dynamic fact");
    } else {
      claim(functor_key(r.head), "rule");
    }
  }

  sheet.board = parse_board_extension(sheet);
  return sheet;
}

RuleSheet parse_kif_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GdlError("cannot open rule sheet: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_kif(buf.str());
}

}  // namespace ggp
