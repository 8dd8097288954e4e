#pragma once

#include <string>

#include "ggp/rulesheet.hpp"

namespace ggp {

/// Parses KIF text (s-expressions, ";" comments) into a rule sheet.
/// Classifies every top-level expression, checks rule safety and relation
/// uniqueness, and interprets the board extension when present.
RuleSheet parse_kif(const std::string& text);

RuleSheet parse_kif_file(const std::string& path);

}  // namespace ggp
