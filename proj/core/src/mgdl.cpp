#include "ggp/mgdl.hpp"

#include <algorithm>
#include <set>

namespace ggp {

namespace {

const std::set<std::string> kReservedRuleHeads = {"terminal", "goal", "legal", "next",
                                                  "init"};

void flatten_or_branches(const Literal& l, std::vector<Literal>& out) {
  if (!l.is_distinct && l.sentence.is_compound() && l.sentence.symbol == "or") {
    for (const Term& branch : l.sentence.args) {
      Literal b;
      b.sentence = branch;
      b.negated = l.negated;
      if (branch.is_compound() && branch.symbol == "not") {
        b.sentence = branch.args.at(0);
        b.negated = !l.negated;
      }
      b.is_distinct = b.sentence.is_compound() && b.sentence.symbol == "distinct";
      flatten_or_branches(b, out);
    }
    return;
  }
  out.push_back(l);
}

bool binds_variable_to_compound(const Bindings& env) {
  for (const auto& [var, value] : env.map()) {
    Term resolved = env.resolve(Term::variable(var));
    if (resolved.is_compound()) return true;
  }
  return false;
}

}  // namespace

ConformanceResult check_conformance(const RuleSheet& sheet) {
  ConformanceResult result;
  for (const Rule& rule : sheet.rules) {
    if (rule.body.empty()) continue;
    if (kReservedRuleHeads.count(rule.head.symbol)) continue;

    std::vector<Literal> literals;
    for (const Literal& l : rule.body) flatten_or_branches(l, literals);

    for (const Literal& l : literals) {
      if (l.is_distinct) continue;
      if (l.sentence.symbol == "does" || l.sentence.symbol == "true") continue;
      Term renamed_literal = rename_variables(l.sentence, "__l");
      for (const Rule& other : sheet.rules) {
        Term renamed_head = rename_variables(other.head, "__h");
        Bindings env;
        if (!unify(renamed_literal, renamed_head, env)) continue;
        if (binds_variable_to_compound(env)) {
          result.conforming = false;
          result.witnesses.push_back({rule, l, other.head});
        }
      }
    }
  }
  return result;
}

namespace {

void append_sanitized(std::string& out, const std::string& symbol) {
  static const char* hex = "0123456789abcdef";
  for (unsigned char c : symbol) {
    if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('_');
      out.push_back('x');
      out.push_back(hex[c >> 4]);
      out.push_back(hex[c & 0xf]);
    }
  }
}

void mangle_args(const Term& t, std::string& name, std::vector<Term>& leaves) {
  for (const Term& a : t.args) {
    if (a.is_compound()) {
      name += "_LPAR_";
      append_sanitized(name, a.symbol);
      mangle_args(a, name, leaves);
      name += "_RPAR";
    } else {
      name += "_ARG";
      leaves.push_back(a);
    }
  }
}

}  // namespace

FlatSentence mangle(const Term& sentence) {
  if (sentence.is_variable())
    throw GdlError("cannot mangle a bare variable: " + sentence.to_string());
  FlatSentence out;
  append_sanitized(out.name.name, sentence.symbol);
  mangle_args(sentence, out.name.name, out.flat_args);
  out.name.flat_arity = static_cast<int>(out.flat_args.size());
  return out;
}

namespace {

Term unflatten_walk(const Term& shape, const std::vector<Term>& leaves, size_t& idx) {
  if (!shape.is_compound()) {
    if (idx >= leaves.size()) throw GdlError("unflatten: not enough leaves");
    return leaves[idx++];
  }
  std::vector<Term> args;
  args.reserve(shape.args.size());
  for (const Term& a : shape.args) args.push_back(unflatten_walk(a, leaves, idx));
  return Term::compound(shape.symbol, std::move(args));
}

}  // namespace

Term unflatten(const Term& shape, const std::vector<Term>& leaves) {
  if (!shape.is_compound()) {
    if (!leaves.empty()) throw GdlError("unflatten: atom shape takes no leaves");
    return shape;
  }
  size_t idx = 0;
  Term t = unflatten_walk(shape, leaves, idx);
  if (idx != leaves.size()) throw GdlError("unflatten: leftover leaves");
  return t;
}

RelationKind NormalizedSheet::kind_of(const std::string& relation) const {
  auto it = kinds.find(relation);
  if (it == kinds.end()) throw GdlError("unknown relation: " + relation);
  return it->second;
}

namespace {

// Splits rules on positive or-literals; negated ors have already been
// expanded by De Morgan in flatten_or_branches.
void split_rule(const Rule& rule, std::vector<Rule>& out) {
  std::vector<Literal> body;
  for (const Literal& l : rule.body) {
    if (!l.negated && !l.is_distinct && l.sentence.is_compound() &&
        l.sentence.symbol == "or") {
      for (size_t branch = 0; branch < l.sentence.args.size(); ++branch) {
        Rule sub = rule;
        sub.body.clear();
        sub.body.insert(sub.body.end(), body.begin(), body.end());
        const Term& bt = l.sentence.args[branch];
        Literal bl;
        bl.sentence = bt;
        if (bt.is_compound() && bt.symbol == "not") {
          bl.sentence = bt.args.at(0);
          bl.negated = true;
        }
        bl.is_distinct = bl.sentence.is_compound() && bl.sentence.symbol == "distinct";
        sub.body.push_back(bl);
        size_t rest_start = static_cast<size_t>(&l - rule.body.data()) + 1;
        sub.body.insert(sub.body.end(), rule.body.begin() + rest_start, rule.body.end());
        split_rule(sub, out);
      }
      return;
    }
    if (l.negated && l.sentence.is_compound() && l.sentence.symbol == "or") {
      std::vector<Literal> expanded;
      flatten_or_branches(l, expanded);
      body.insert(body.end(), expanded.begin(), expanded.end());
      continue;
    }
    body.push_back(l);
  }
  Rule done = rule;
  done.body = std::move(body);
  out.push_back(std::move(done));
}

void check_safety_flat(const Rule& rule) {
  std::vector<std::string> bound;
  for (const Literal& l : rule.body) {
    if (!l.negated && !l.is_distinct) l.sentence.collect_variables(bound);
  }
  auto ok = [&bound](const Term& t) {
    std::vector<std::string> vars;
    t.collect_variables(vars);
    for (const auto& v : vars) {
      if (std::find(bound.begin(), bound.end(), v) == bound.end()) return false;
    }
    return true;
  };
  if (!ok(rule.head))
    throw GdlError("or-splitting produced an unsafe rule: " + rule.head.to_string());
  for (const Literal& l : rule.body) {
    if ((l.negated || l.is_distinct) && !ok(l.sentence))
      throw GdlError("or-splitting produced an unsafe rule: " + rule.head.to_string());
  }
}

class Normalizer {
 public:
  explicit Normalizer(const RuleSheet& in) : in_(in) {}

  NormalizedSheet run() {
    out_.sheet.roles = in_.roles;
    out_.sheet.extension_sentences = in_.extension_sentences;
    out_.sheet.board = in_.board;

    for (const Term& t : in_.static_facts) {
      out_.sheet.static_facts.push_back(flatten(t, RelationKind::kStatic));
    }
    for (const Term& t : in_.init_facts) {
      out_.sheet.init_facts.push_back(flatten(t, RelationKind::kDynamic));
    }

    std::vector<Rule> split;
    for (const Rule& r : in_.rules) split_rule(r, split);
    for (const Rule& r : split) check_safety_flat(r);

    // next heads declare their inner sentences as dynamic relations
    for (const Rule& r : split) {
      if (r.head.is_compound() && r.head.symbol == "next") {
        FlatSentence inner = mangle(r.head.args.at(0));
        record(inner.name.name, RelationKind::kDynamic, r.head.args.at(0));
      }
    }

    for (const Rule& r : split) {
      Rule flat;
      flat.head = flatten(r.head, RelationKind::kRule);
      for (const Literal& l : r.body) {
        Literal fl;
        fl.negated = l.negated;
        fl.is_distinct = l.is_distinct;
        if (l.is_distinct) {
          for (const Term& a : l.sentence.args) {
            if (a.is_compound())
              throw GdlError("distinct argument must be flat: " + l.sentence.to_string());
          }
          fl.sentence = l.sentence;
        } else if (l.sentence.is_compound() && l.sentence.symbol == "true") {
          fl.sentence = flatten_reference(l.sentence.args.at(0));
        } else if (l.sentence.is_compound() && l.sentence.symbol == "does") {
          fl.sentence = flatten(l.sentence, RelationKind::kDoes);
        } else {
          fl.sentence = flatten_reference(l.sentence);
        }
        flat.body.push_back(std::move(fl));
      }
      out_.sheet.rules.push_back(std::move(flat));
    }
    return std::move(out_);
  }

 private:
  const RuleSheet& in_;
  NormalizedSheet out_;

  void record(const std::string& name, RelationKind kind, const Term& sentence) {
    auto [it, inserted] = out_.kinds.emplace(name, kind);
    if (!inserted && it->second != kind) {
      throw GdlError("relation " + name + " classified inconsistently");
    }
    out_.shapes.emplace(name, sentence);
  }

  Term to_flat_term(const FlatSentence& fs) {
    if (fs.flat_args.empty()) return Term::constant(fs.name.name);
    return Term::compound(fs.name.name, fs.flat_args);
  }

  Term flatten(const Term& sentence, RelationKind kind) {
    FlatSentence fs = mangle(sentence);
    record(fs.name.name, kind, sentence);
    return to_flat_term(fs);
  }

  // body reference: kind resolved later (could be static, dynamic or rule)
  Term flatten_reference(const Term& sentence) {
    if (sentence.is_variable())
      throw GdlError("a bare variable cannot be queried: " + sentence.to_string());
    FlatSentence fs = mangle(sentence);
    out_.shapes.emplace(fs.name.name, sentence);
    return to_flat_term(fs);
  }
};

}  // namespace

NormalizedSheet normalize(const RuleSheet& sheet) { return Normalizer(sheet).run(); }

}  // namespace ggp
