#include "neq/encoders.hpp"

#include <json.hpp>

#include <cctype>
#include <sstream>

namespace neq {

void DiophSystem::validate() const {
  if (variables < 1) throw std::invalid_argument("a Diophantine system needs at least one variable");
  for (const auto &eq : equations) {
    if (static_cast<int>(eq.beta.size()) != variables) throw std::invalid_argument("beta has the wrong length");
    if (static_cast<int>(eq.gamma.size()) != variables) throw std::invalid_argument("gamma has the wrong row count");
    for (const auto &row : eq.gamma)
      if (static_cast<int>(row.size()) != variables) throw std::invalid_argument("gamma has the wrong column count");
  }
}

Integer DiophSystem::evaluate(std::size_t equation, const std::vector<Integer> &x) const {
  const DiophEquation &eq = equations.at(equation);
  Integer v = eq.alpha;
  for (int j = 0; j < variables; ++j) {
    v += eq.beta[j] * x.at(j);
    for (int k = 0; k < variables; ++k) v += eq.gamma[j][k] * x[j] * x.at(k);
  }
  return v;
}

bool DiophSystem::solved_by(const std::vector<Integer> &x) const {
  for (std::size_t i = 0; i < equations.size(); ++i)
    if (evaluate(i, x) != 0) return false;
  return true;
}

namespace {

DiophEquation empty_equation(int n) {
  return {0, std::vector<Integer>(n, 0), std::vector<std::vector<Integer>>(n, std::vector<Integer>(n, 0))};
}

Integer json_integer(const nlohmann::json &v, const std::string &where) {
  if (v.is_number_integer()) return v.is_number_unsigned() ? Integer(v.get<std::uint64_t>()) : Integer(v.get<std::int64_t>());
  if (v.is_string()) {
    try {
      return Integer(v.get<std::string>());
    } catch (const std::exception &) {
    }
  }
  throw DiophFormatError(where + " must be an integer");
}

DiophSystem parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw DiophFormatError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw DiophFormatError("top level must be an object");
  for (const auto &[key, value] : doc.items())
    if (key != "variables" && key != "equations") throw DiophFormatError("unknown field '" + key + "'");
  if (!doc.contains("variables") || !doc["variables"].is_number_integer())
    throw DiophFormatError("'variables' must be a positive integer");
  DiophSystem s;
  s.variables = doc["variables"].get<int>();
  if (s.variables < 1) throw DiophFormatError("'variables' must be a positive integer");
  const int n = s.variables;
  if (doc.contains("equations")) {
    if (!doc["equations"].is_array()) throw DiophFormatError("'equations' must be an array");
    for (const auto &e : doc["equations"]) {
      const std::string where = "equation " + std::to_string(s.equations.size() + 1);
      if (!e.is_object()) throw DiophFormatError(where + " must be an object");
      for (const auto &[key, value] : e.items())
        if (key != "alpha" && key != "beta" && key != "gamma")
          throw DiophFormatError(where + ": unknown field '" + key + "'");
      DiophEquation eq = empty_equation(n);
      if (e.contains("alpha")) eq.alpha = json_integer(e["alpha"], where + " alpha");
      if (e.contains("beta")) {
        if (!e["beta"].is_array() || static_cast<int>(e["beta"].size()) != n)
          throw DiophFormatError(where + ": beta must have " + std::to_string(n) + " entries");
        for (int j = 0; j < n; ++j) eq.beta[j] = json_integer(e["beta"][j], where + " beta");
      }
      if (e.contains("gamma")) {
        if (!e["gamma"].is_array() || static_cast<int>(e["gamma"].size()) != n)
          throw DiophFormatError(where + ": gamma must have " + std::to_string(n) + " rows");
        for (int j = 0; j < n; ++j) {
          const auto &row = e["gamma"][j];
          if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw DiophFormatError(where + ": gamma rows must have " + std::to_string(n) + " entries");
          for (int k = 0; k < n; ++k) eq.gamma[j][k] = json_integer(row[k], where + " gamma");
        }
      }
      s.equations.push_back(std::move(eq));
    }
  }
  return s;
}

/// Sparse polynomial read from one text line: constant, x_j, x_j x_k.
struct TextPoly {
  Integer constant = 0;
  std::map<int, Integer> linear;
  std::map<std::pair<int, int>, Integer> quadratic;
  int max_index = 0;
};

class PolyLineParser {
public:
  PolyLineParser(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  TextPoly parse() {
    TextPoly p;
    sum(p, 1);
    skip_ws();
    if (peek() == '=') {
      ++pos_;
      sum(p, -1);
    }
    skip_ws();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string &msg) const {
    throw DiophFormatError("line " + std::to_string(line_) + ", column " + std::to_string(pos_ + 1) + ": " + msg);
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void sum(TextPoly &p, int side) {
    skip_ws();
    int sign = 1;
    if (peek() == '+' || peek() == '-') {
      sign = peek() == '-' ? -1 : 1;
      ++pos_;
    }
    term(p, sign * side);
    for (;;) {
      skip_ws();
      if (peek() != '+' && peek() != '-') return;
      sign = peek() == '-' ? -1 : 1;
      ++pos_;
      term(p, sign * side);
    }
  }

  void term(TextPoly &p, int sign) {
    Integer coeff = sign;
    std::vector<int> vars;
    for (;;) {
      skip_ws();
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        coeff *= number();
      } else if (peek() == 'x') {
        ++pos_;
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a variable index after 'x'");
        Integer idx = number();
        if (idx < 1 || idx > 100000) fail("variable index out of range");
        int j = static_cast<int>(idx);
        p.max_index = std::max(p.max_index, j);
        int power = 1;
        skip_ws();
        if (peek() == '^') {
          ++pos_;
          skip_ws();
          if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an exponent");
          Integer e = number();
          if (e > 2) fail("degree exceeds 2");
          power = static_cast<int>(e);
        }
        for (int k = 0; k < power; ++k) vars.push_back(j - 1);
      } else {
        fail(pos_ < text_.size() ? "unexpected '" + std::string(1, peek()) + "'" : "unexpected end of line");
      }
      if (vars.size() > 2) fail("degree exceeds 2");
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
    }
    if (vars.empty())
      p.constant += coeff;
    else if (vars.size() == 1)
      p.linear[vars[0]] += coeff;
    else
      p.quadratic[{std::min(vars[0], vars[1]), std::max(vars[0], vars[1])}] += coeff;
  }

  Integer number() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }
};

DiophSystem parse_text(std::string_view text) {
  std::vector<TextPoly> polys;
  int declared = 0, used = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    auto first = raw.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    std::string_view body(raw);
    body.remove_prefix(first);
    if (body[0] == 'n') {
      if (declared || !polys.empty()) throw DiophFormatError("line " + std::to_string(line) + ": misplaced 'n =' header");
      std::istringstream h{std::string(body.substr(1))};
      char eq = 0;
      long long n = 0;
      std::string rest;
      if (!(h >> eq >> n) || eq != '=' || n < 1 || n > 100000 || (h >> rest))
        throw DiophFormatError("line " + std::to_string(line) + ": expected 'n = <positive integer>'");
      declared = static_cast<int>(n);
      continue;
    }
    polys.push_back(PolyLineParser(body, line).parse());
    used = std::max(used, polys.back().max_index);
  }
  if (declared && used > declared)
    throw DiophFormatError("variable x" + std::to_string(used) + " exceeds declared n = " + std::to_string(declared));
  DiophSystem s;
  s.variables = declared ? declared : std::max(used, 1);
  for (const auto &p : polys) {
    DiophEquation eq = empty_equation(s.variables);
    eq.alpha = p.constant;
    for (const auto &[j, c] : p.linear) eq.beta[j] = c;
    for (const auto &[jk, c] : p.quadratic) eq.gamma[jk.first][jk.second] = c;
    s.equations.push_back(std::move(eq));
  }
  return s;
}

std::int64_t exponent_of(const Integer &v) {
  if (!fits_int64(v)) throw std::invalid_argument("coefficient " + v.str() + " does not fit a word exponent");
  return static_cast<std::int64_t>(v);
}

Word a_word() { return word({gen(GenKind::A, 1)}); }
Word b_word() { return word({gen(GenKind::A, 2)}); }
Word var_word(const std::string &name) { return word({var(name)}); }

/// Left-normed commutator of `args` raised to `exponent`, as a single factor.
Factor commutator_power(const std::vector<Word> &args, std::int64_t exponent) {
  std::vector<Word> head(args.begin(), args.end() - 1);
  Word left = head.size() == 1 ? head[0] : nested_commutator(head);
  return comm(left, args.back(), exponent);
}

} // namespace

DiophSystem parse_dioph_system(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  DiophSystem s = first != std::string_view::npos && text[first] == '{' ? parse_json(text) : parse_text(text);
  s.validate();
  return s;
}

std::string format_dioph_system(const DiophSystem &s) {
  std::string out = "n = " + std::to_string(s.variables) + "\n";
  for (const auto &eq : s.equations) {
    std::string line;
    auto add = [&](const Integer &c, const std::string &mono) {
      if (c == 0) return;
      Integer mag = abs(c);
      line += line.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
      if (mono.empty())
        line += mag.str();
      else
        line += (mag == 1 ? "" : mag.str() + "*") + mono;
    };
    for (int j = 0; j < s.variables; ++j)
      for (int k = 0; k < s.variables; ++k)
        add(eq.gamma[j][k], j == k ? "x" + std::to_string(j + 1) + "^2"
                                   : "x" + std::to_string(j + 1) + "*x" + std::to_string(k + 1));
    for (int j = 0; j < s.variables; ++j) add(eq.beta[j], "x" + std::to_string(j + 1));
    add(eq.alpha, "");
    out += (line.empty() ? "0" : line) + "\n";
  }
  return out;
}

std::string y_name(int j) { return "y" + std::to_string(j); }
std::string yp_name(int j) { return "yp" + std::to_string(j); }

EquationSystem encode_two_step(const DiophSystem &s, int rank) {
  s.validate();
  if (rank < 2) throw std::invalid_argument("two-step encoding needs rank >= 2");
  const int n = s.variables;
  EquationSystem out;
  for (int j = 1; j <= n; ++j) {
    out.variables.push_back(y_name(j));
    out.variables.push_back(yp_name(j));
  }
  for (const auto &eq : s.equations) {
    Word main;
    if (eq.alpha != 0) main.factors.push_back(commutator_power({a_word(), b_word()}, exponent_of(eq.alpha)));
    for (int j = 0; j < n; ++j)
      if (eq.beta[j] != 0)
        main.factors.push_back(commutator_power({a_word(), var_word(yp_name(j + 1))}, exponent_of(eq.beta[j])));
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (eq.gamma[j][k] != 0)
          main.factors.push_back(
              commutator_power({var_word(y_name(j + 1)), var_word(yp_name(k + 1))}, exponent_of(eq.gamma[j][k])));
    out.equations.push_back({std::move(main), Word{}});
  }
  for (int j = 1; j <= n; ++j) {
    out.equations.push_back({word({commutator_power({a_word(), var_word(y_name(j))}, 1)}), Word{}});
    out.equations.push_back({word({commutator_power({b_word(), var_word(yp_name(j))}, 1)}), Word{}});
    out.equations.push_back({word({commutator_power({b_word(), var_word(y_name(j))}, 1)}),
                             word({commutator_power({var_word(yp_name(j)), a_word()}, 1)})});
  }
  return out;
}

Word higher_step_base(int step) {
  if (step < 3) throw std::invalid_argument("higher-step encoding needs step >= 3");
  if (step == 3) return a_word();
  std::vector<Word> args{a_word()};
  for (int i = 0; i < step - 3; ++i) args.push_back(b_word());
  return nested_commutator(args);
}

EquationSystem encode_higher_step(const DiophSystem &s, const FreeNilpotentSpec &spec) {
  s.validate();
  if (spec.step < 3) throw std::invalid_argument("higher-step encoding needs step >= 3");
  if (spec.rank < 2) throw std::invalid_argument("higher-step encoding needs rank >= 2");
  const int n = s.variables;
  const Word R = higher_step_base(spec.step);
  EquationSystem out;
  for (int j = 1; j <= n; ++j) out.variables.push_back(y_name(j));
  for (const auto &eq : s.equations) {
    Word main;
    if (eq.alpha != 0) main.factors.push_back(commutator_power({R, b_word(), b_word()}, exponent_of(eq.alpha)));
    for (int j = 0; j < n; ++j)
      if (eq.beta[j] != 0)
        main.factors.push_back(commutator_power({R, b_word(), var_word(y_name(j + 1))}, exponent_of(eq.beta[j])));
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (eq.gamma[j][k] != 0)
          main.factors.push_back(commutator_power({R, var_word(y_name(j + 1)), var_word(y_name(k + 1))},
                                                  exponent_of(eq.gamma[j][k])));
    out.equations.push_back({std::move(main), Word{}});
  }
  return out;
}

std::map<std::string, Word> lift_solution(const std::vector<Integer> &x, EncodingTarget target) {
  std::map<std::string, Word> out;
  auto power_word = [](int index, const Integer &e) {
    return e == 0 ? Word{} : word({gen(GenKind::A, index, exponent_of(e))});
  };
  for (std::size_t j = 0; j < x.size(); ++j) {
    const int idx = static_cast<int>(j) + 1;
    if (target == EncodingTarget::TwoStep) {
      out[y_name(idx)] = power_word(1, x[j]);
      out[yp_name(idx)] = power_word(2, x[j]);
    } else {
      out[y_name(idx)] = power_word(2, x[j]);
    }
  }
  return out;
}

std::vector<Integer> project_solution(const std::map<std::string, Word> &assignment, const DiophSystem &s, int rank) {
  s.validate();
  const FreeNilpotentSpec spec{2, rank};
  const EquationSystem encoded = encode_two_step(s, rank);
  MagnusAssignment values;
  for (const auto &name : encoded.variables) {
    auto it = assignment.find(name);
    if (it == assignment.end()) throw std::invalid_argument("assignment lacks " + name);
    values.emplace(name, magnus_eval_word(it->second, spec));
  }
  const std::size_t first_aux = s.equations.size();
  for (std::size_t i = first_aux; i < encoded.equations.size(); ++i)
    if (!magnus_holds(encoded.equations[i], values, spec))
      throw std::invalid_argument("assignment fails auxiliary equation " + format_equation(encoded.equations[i]));
  std::vector<Integer> x;
  for (int j = 1; j <= s.variables; ++j) x.push_back(values.at(y_name(j)).coefficient({0}));
  return x;
}

} // namespace neq
