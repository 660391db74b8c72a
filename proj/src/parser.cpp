#include "neq/parser.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

namespace neq {

ParseError::ParseError(const std::string &message, std::size_t position, std::size_t line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ", column " +
                                        std::to_string(position + 1) + ": " + message
                                  : "column " + std::to_string(position + 1) + ": " + message),
      position_(position), line_(line), detail_(message) {}

bool is_identifier(std::string_view text) {
  if (text.empty() || !std::isalpha(static_cast<unsigned char>(text[0]))) return false;
  return std::all_of(text.begin(), text.end(), [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
  });
}

namespace {

class WordParser {
public:
  WordParser(std::string_view text, const Alphabet &alphabet, const ParseOptions &options)
      : text_(text), alphabet_(alphabet), options_(options) {}

  Equation equation() {
    Equation eq;
    eq.lhs = word();
    skip_ws();
    if (peek() == '=') {
      ++pos_;
      eq.rhs = word();
    }
    expect_end();
    return eq;
  }

  Word single_word() {
    Word w = word();
    expect_end();
    return w;
  }

private:
  std::string_view text_;
  const Alphabet &alphabet_;
  const ParseOptions &options_;
  std::size_t pos_ = 0;
  std::size_t depth_ = 0;

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  bool at_end() const { return pos_ >= text_.size(); }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string &message) const { throw ParseError(message, pos_); }
  [[noreturn]] void fail_at(const std::string &message, std::size_t at) const {
    throw ParseError(message, at);
  }

  void expect(char ch) {
    skip_ws();
    if (peek() != ch) {
      if (at_end()) fail(std::string("expected '") + ch + "' but reached end of input");
      fail(std::string("expected '") + ch + "' but found '" + peek() + "'");
    }
    ++pos_;
  }

  void expect_end() {
    skip_ws();
    if (!at_end()) fail(std::string("unexpected character '") + peek() + "'");
  }

  Word word() {
    skip_ws();
    if (peek() == '1') {
      // '1' spells the identity only when it is a complete word.
      std::size_t save = pos_;
      ++pos_;
      skip_ws();
      char next = peek();
      if (next == '\0' || next == '=' || next == ')' || next == ']' || next == ',') return Word{};
      pos_ = save;
    }
    Word w;
    w.factors.push_back(factor());
    for (;;) {
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
      w.factors.push_back(factor());
    }
    return w;
  }

  Factor factor() {
    Factor f = atom();
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      std::int64_t e = integer();
      std::visit([e](auto &node) { node.exponent = e; }, f.node);
    }
    return f;
  }

  std::int64_t integer() {
    skip_ws();
    std::size_t start = pos_;
    bool negative = false;
    if (peek() == '-' || peek() == '+') {
      negative = peek() == '-';
      ++pos_;
      skip_ws();
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an integer exponent");
    // Accumulate as a negative number so that INT64_MIN is representable.
    std::int64_t value = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      int digit = peek() - '0';
      if (value < (std::numeric_limits<std::int64_t>::min() + digit) / 10)
        fail_at("integer out of range", start);
      value = value * 10 - digit;
      ++pos_;
    }
    if (!negative) {
      if (value == std::numeric_limits<std::int64_t>::min()) fail_at("integer out of range", start);
      value = -value;
    }
    return value;
  }

  struct DepthGuard {
    WordParser &p;
    explicit DepthGuard(WordParser &parser) : p(parser) {
      if (++p.depth_ > p.options_.max_depth) p.fail("nesting too deep");
    }
    ~DepthGuard() { --p.depth_; }
  };

  Factor atom() {
    skip_ws();
    char ch = peek();
    if (ch == '(') {
      DepthGuard guard(*this);
      ++pos_;
      Word inner = word();
      expect(')');
      return group(std::move(inner));
    }
    if (ch == '[') {
      DepthGuard guard(*this);
      ++pos_;
      std::vector<Word> args;
      args.push_back(word());
      expect(',');
      args.push_back(word());
      for (;;) {
        skip_ws();
        if (peek() != ',') break;
        ++pos_;
        args.push_back(word());
      }
      expect(']');
      Word nested = nested_commutator(args);
      return std::move(nested.factors.front());
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) return identifier();
    if (at_end()) fail("unexpected end of input");
    fail(std::string("unexpected character '") + ch + "'");
  }

  Factor identifier() {
    std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    std::string_view name = text_.substr(start, pos_ - start);

    if (name == "c") {
      if (!alphabet_.has_c) fail_at("generator c is not available here", start);
      return gen(GenKind::C, 1);
    }
    bool generator_shape = name.size() >= 2 && (name[0] == 'a' || name[0] == 'b' || name[0] == 'd') &&
                           std::all_of(name.begin() + 1, name.end(),
                                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    if (generator_shape) {
      if (name.size() > 10) fail_at("generator index out of range in '" + std::string(name) + "'", start);
      int index = std::stoi(std::string(name.substr(1)));
      GenKind kind = name[0] == 'a' ? GenKind::A : name[0] == 'b' ? GenKind::B : GenKind::D;
      int bound = kind == GenKind::A ? alphabet_.a_count
                  : kind == GenKind::B ? alphabet_.b_count
                                       : alphabet_.d_count;
      if (index < 1 || index > bound)
        fail_at("unknown generator '" + std::string(name) + "' (declared: " + std::to_string(bound) + ")",
                start);
      return gen(kind, index);
    }
    if (options_.variables) {
      const auto &vars = *options_.variables;
      if (std::find(vars.begin(), vars.end(), name) == vars.end())
        fail_at("unknown variable '" + std::string(name) + "'", start);
    }
    return var(std::string(name));
  }
};

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

template <typename F>
auto with_line(std::size_t line_no, F &&f) {
  try {
    return f();
  } catch (const ParseError &e) {
    throw ParseError(e.detail(), e.position(), line_no);
  }
}

} // namespace

Word parse_word(std::string_view text, const Alphabet &alphabet, const ParseOptions &options) {
  return WordParser(text, alphabet, options).single_word();
}

Equation parse_equation(std::string_view text, const Alphabet &alphabet, const ParseOptions &options) {
  return WordParser(text, alphabet, options).equation();
}

EquationSystem parse_system(std::string_view text, const Alphabet &alphabet) {
  EquationSystem system;
  ParseOptions options;
  auto lines = split_lines(text);
  bool declared = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = strip(lines[i]);
    if (line.empty()) continue;
    if (line.rfind("vars:", 0) == 0) {
      if (declared || !system.equations.empty())
        throw ParseError("variable declaration must come first and only once", 0, i + 1);
      declared = true;
      std::string_view rest = line.substr(5);
      std::size_t start = 0;
      while (start <= rest.size()) {
        std::size_t end = rest.find_first_of(", \t", start);
        if (end == std::string_view::npos) end = rest.size();
        std::string_view name = rest.substr(start, end - start);
        if (!name.empty()) {
          if (!is_identifier(name)) throw ParseError("invalid variable name '" + std::string(name) + "'", 0, i + 1);
          if (std::find(system.variables.begin(), system.variables.end(), name) != system.variables.end())
            throw ParseError("duplicate variable '" + std::string(name) + "'", 0, i + 1);
          system.variables.emplace_back(name);
        }
        start = end + 1;
      }
      options.variables = system.variables;
      continue;
    }
    Equation eq = with_line(i + 1, [&] { return parse_equation(line, alphabet, options); });
    if (!declared) {
      for (auto &v : collect_variables(eq))
        if (std::find(system.variables.begin(), system.variables.end(), v) == system.variables.end())
          system.variables.push_back(v);
    }
    system.equations.push_back(std::move(eq));
  }
  return system;
}

std::map<std::string, Word> parse_assignment(std::string_view text, const Alphabet &alphabet) {
  std::map<std::string, Word> out;
  auto lines = split_lines(text);
  ParseOptions constants_only;
  constants_only.variables = std::vector<std::string>{};
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = strip(lines[i]);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'name = word'", 0, i + 1);
    std::string_view name = strip(line.substr(0, eq));
    if (!is_identifier(name)) throw ParseError("invalid variable name '" + std::string(name) + "'", 0, i + 1);
    if (out.count(std::string(name))) throw ParseError("duplicate assignment to '" + std::string(name) + "'", 0, i + 1);
    std::string_view rhs = line.substr(eq + 1);
    Word w = with_line(i + 1, [&] { return parse_word(rhs, alphabet, constants_only); });
    out.emplace(std::string(name), std::move(w));
  }
  return out;
}

} // namespace neq
