#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ggp/term.hpp"

namespace ggp {

struct Literal {
  bool negated = false;
  bool is_distinct = false;
  Term sentence;

  static Literal positive(Term t) { return {false, false, std::move(t)}; }
  static Literal negative(Term t) { return {true, false, std::move(t)}; }

  bool operator==(const Literal& other) const = default;
};

struct Rule {
  Term head;
  std::vector<Literal> body;

  bool operator==(const Rule& other) const = default;
};

/// The Euclidean board extension: a hypercubical board plus the meaning of
/// the board and play relations' argument positions.
struct BoardSpec {
  enum class Slot : uint8_t { kPiece, kDim, kSkip };

  double d_min = 0;
  double d_max = 0;
  std::string board_functor;
  std::vector<Slot> board_pattern;
  std::string play_functor;
  std::vector<Slot> play_pattern;
  int n_dims = 0;

  bool operator==(const BoardSpec& other) const = default;
};

struct RuleSheet {
  std::vector<std::string> roles;
  std::vector<Term> static_facts;
  std::vector<Term> init_facts;
  std::vector<Rule> rules;
  std::vector<Term> extension_sentences;
  std::optional<BoardSpec> board;
};

/// Interprets the five extension relations collected at parse time.
/// Returns nullopt when no extension sentence is present; throws GdlError on
/// a present but malformed extension.
std::optional<BoardSpec> parse_board_extension(const RuleSheet& sheet);

struct BoardPiece {
  std::string piece;
  std::vector<double> coords;

  bool operator==(const BoardPiece& other) const = default;
};

/// Applies the play pattern to a ground move term. Returns nullopt when the
/// move does not match the play functor/arity (e.g. noop); throws on a
/// non-numeric dim argument.
std::optional<BoardPiece> extract_move_coords(const BoardSpec& spec, const Term& move);

/// One entry per state fact matching the board functor and pattern arity,
/// ordered lexicographically by coordinates then piece.
std::vector<BoardPiece> extract_board_pieces(const BoardSpec& spec,
                                             const std::vector<Term>& state);

/// Canonical text form of a sheet; parsing it back yields a structurally
/// identical RuleSheet.
std::string print_rulesheet(const RuleSheet& sheet);

}  // namespace ggp
