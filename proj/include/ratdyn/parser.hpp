#ifndef RATDYN_PARSER_HPP
#define RATDYN_PARSER_HPP

#include <string>
#include <vector>

#include "ratdyn/ratmap.hpp"

namespace ratdyn {

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' uint)?
//   base   := 'z' | number | 'i' | '(' expr ')'
//   number := int ('/' uint)?
// Whitespace is ignored. Throws parse_error with a position, or
// degenerate_map_error when the expression simplifies to a constant.
RatMap parse_map(const std::string& text);

inline std::string print_map(const RatMap& m) { return m.str(); }

// fixture corpus: one expression per line, '#' starts a comment
std::vector<RatMap> parse_corpus(const std::string& file_contents);

} // namespace ratdyn

#endif
