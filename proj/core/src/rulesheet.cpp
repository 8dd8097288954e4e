#include "ggp/rulesheet.hpp"

#include <algorithm>
#include <sstream>

namespace ggp {

std::optional<BoardPiece> extract_move_coords(const BoardSpec& spec, const Term& move) {
  if (!move.ground()) throw GdlError("move must be ground: " + move.to_string());
  if (!move.is_compound() || move.symbol != spec.play_functor ||
      move.args.size() != spec.play_pattern.size()) {
    return std::nullopt;
  }
  BoardPiece out;
  for (size_t i = 0; i < spec.play_pattern.size(); ++i) {
    const Term& arg = move.args[i];
    switch (spec.play_pattern[i]) {
      case BoardSpec::Slot::kPiece:
        out.piece = arg.to_string();
        break;
      case BoardSpec::Slot::kDim: {
        if (!arg.is_constant())
          throw GdlError("dim argument is not a constant: " + move.to_string());
        auto v = parse_coordinate(arg.symbol);
        if (!v)
          throw GdlError("non-numeric dim argument '" + arg.symbol + "' in " +
                         move.to_string());
        out.coords.push_back(*v);
        break;
      }
      case BoardSpec::Slot::kSkip:
        break;
    }
  }
  return out;
}

std::vector<BoardPiece> extract_board_pieces(const BoardSpec& spec,
                                             const std::vector<Term>& state) {
  std::vector<BoardPiece> out;
  for (const Term& fact : state) {
    if (!fact.is_compound() || fact.symbol != spec.board_functor ||
        fact.args.size() != spec.board_pattern.size()) {
      continue;
    }
    BoardPiece p;
    for (size_t i = 0; i < spec.board_pattern.size(); ++i) {
      const Term& arg = fact.args[i];
      switch (spec.board_pattern[i]) {
        case BoardSpec::Slot::kPiece:
          p.piece = arg.to_string();
          break;
        case BoardSpec::Slot::kDim: {
          if (!arg.is_constant())
            throw GdlError("dim argument is not a constant: " + fact.to_string());
          auto v = parse_coordinate(arg.symbol);
          if (!v)
            throw GdlError("non-numeric dim argument '" + arg.symbol + "' in " +
                           fact.to_string());
          p.coords.push_back(*v);
          break;
        }
        case BoardSpec::Slot::kSkip:
          break;
      }
    }
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(), [](const BoardPiece& a, const BoardPiece& b) {
    if (a.coords != b.coords) return a.coords < b.coords;
    return a.piece < b.piece;
  });
  return out;
}

std::string print_rulesheet(const RuleSheet& sheet) {
  std::ostringstream out;
  for (const auto& r : sheet.roles) out << "(role " << r << ")\n";
  for (const Term& t : sheet.extension_sentences) out << t << "\n";
  for (const Term& t : sheet.static_facts) out << t << "\n";
  for (const Term& t : sheet.init_facts) out << "(init " << t << ")\n";
  for (const Rule& r : sheet.rules) {
    out << "(<= " << r.head;
    for (const Literal& l : r.body) {
      out << "\n    ";
      if (l.negated) {
        out << "(not " << l.sentence << ")";
      } else {
        out << l.sentence;
      }
    }
    out << ")\n";
  }
  return out.str();
}

}  // namespace ggp
