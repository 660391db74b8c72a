#pragma once

#include "neq/word.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace neq {

/// Malformed input text. `position` is a 0-based character offset into the
/// parsed string (or line-relative for multi-line documents, see `line`).
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string &message, std::size_t position, std::size_t line = 0);

  std::size_t position() const { return position_; }
  std::size_t line() const { return line_; }
  const std::string &detail() const { return detail_; }

private:
  std::size_t position_;
  std::size_t line_;
  std::string detail_;
};

struct ParseOptions {
  /// When set, every variable must be one of these names.
  std::optional<std::vector<std::string>> variables;
  /// Maximum bracket nesting depth before the parser gives up.
  std::size_t max_depth = 256;
};

/*
 * Grammar (whitespace-insensitive):
 *
 *   equation ::= word '=' word | word
 *   word     ::= '1' | factor { '*' factor }
 *   factor   ::= atom [ '^' int ]
 *   atom     ::= gen | var | '(' word ')' | '[' word ',' word { ',' word } ']'
 *   gen      ::= ('a' | 'b' | 'd') posint | 'c'
 *   var      ::= letter { letter | digit | '_' }, not spelling a generator
 *
 * Multi-argument brackets are left-normed: [u,v,w] = [[u,v],w].
 */
Word parse_word(std::string_view text, const Alphabet &alphabet, const ParseOptions &options = {});
Equation parse_equation(std::string_view text, const Alphabet &alphabet,
                        const ParseOptions &options = {});

/// One equation per non-blank line; '#' starts a comment. An optional line
/// `vars: x, y, z` declares the variable order (otherwise first occurrence).
EquationSystem parse_system(std::string_view text, const Alphabet &alphabet);

/// Lines of the form `name = word`; '#' comments allowed.
std::map<std::string, Word> parse_assignment(std::string_view text, const Alphabet &alphabet);

bool is_identifier(std::string_view text);

} // namespace neq
