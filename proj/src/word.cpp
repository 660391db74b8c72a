#include "neq/word.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace neq {

bool operator==(const Word &a, const Word &b) { return a.factors == b.factors; }

bool operator==(const GeneratorFactor &a, const GeneratorFactor &b) {
  return a.kind == b.kind && a.index == b.index && a.exponent == b.exponent;
}

bool operator==(const VariableFactor &a, const VariableFactor &b) {
  return a.name == b.name && a.exponent == b.exponent;
}

bool operator==(const CommutatorFactor &a, const CommutatorFactor &b) {
  return a.exponent == b.exponent && a.left == b.left && a.right == b.right;
}

bool operator==(const GroupedFactor &a, const GroupedFactor &b) {
  return a.exponent == b.exponent && a.inner == b.inner;
}

bool operator==(const Factor &a, const Factor &b) { return a.node == b.node; }

bool operator==(const Equation &a, const Equation &b) { return a.lhs == b.lhs && a.rhs == b.rhs; }

Factor gen(GenKind kind, int index, std::int64_t exponent) {
  return Factor{GeneratorFactor{kind, kind == GenKind::C ? 1 : index, exponent}};
}

Factor var(std::string name, std::int64_t exponent) {
  return Factor{VariableFactor{std::move(name), exponent}};
}

Factor comm(Word left, Word right, std::int64_t exponent) {
  return Factor{CommutatorFactor{std::move(left), std::move(right), exponent}};
}

Factor group(Word inner, std::int64_t exponent) {
  return Factor{GroupedFactor{std::move(inner), exponent}};
}

Word word(std::vector<Factor> factors) { return Word{std::move(factors)}; }

Word nested_commutator(const std::vector<Word> &args) {
  if (args.size() < 2) throw std::invalid_argument("commutator needs at least two arguments");
  Word acc = word({comm(args[0], args[1])});
  for (std::size_t i = 2; i < args.size(); ++i) acc = word({comm(acc, args[i])});
  return acc;
}

Word normalized(const Equation &eq) {
  Word w = eq.lhs;
  if (!eq.rhs.empty()) w.factors.push_back(group(eq.rhs, -1));
  return w;
}

namespace {

std::int64_t negate_exponent(std::int64_t e) {
  if (e == std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("exponent cannot be negated");
  return -e;
}

void collect(const Word &w, std::vector<std::string> &out) {
  for (const auto &f : w.factors) {
    std::visit(
        [&](const auto &node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, VariableFactor>) {
            if (std::find(out.begin(), out.end(), node.name) == out.end()) out.push_back(node.name);
          } else if constexpr (std::is_same_v<T, CommutatorFactor>) {
            collect(node.left, out);
            collect(node.right, out);
          } else if constexpr (std::is_same_v<T, GroupedFactor>) {
            collect(node.inner, out);
          }
        },
        f.node);
  }
}

std::string format_exponent(std::int64_t e) { return e == 1 ? std::string{} : "^" + std::to_string(e); }

} // namespace

Word inverse_word(const Word &w) {
  Word out;
  for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) {
    Factor f = *it;
    std::visit([](auto &node) { node.exponent = negate_exponent(node.exponent); }, f.node);
    out.factors.push_back(std::move(f));
  }
  return out;
}

std::vector<std::string> collect_variables(const Word &w) {
  std::vector<std::string> out;
  collect(w, out);
  return out;
}

std::vector<std::string> collect_variables(const Equation &eq) {
  std::vector<std::string> out;
  collect(eq.lhs, out);
  collect(eq.rhs, out);
  return out;
}

std::string generator_name(GenKind kind, int index) {
  switch (kind) {
  case GenKind::A: return "a" + std::to_string(index);
  case GenKind::B: return "b" + std::to_string(index);
  case GenKind::C: return "c";
  case GenKind::D: return "d" + std::to_string(index);
  }
  return "?";
}

std::string format_word(const Word &w) {
  if (w.empty()) return "1";
  std::string out;
  bool first = true;
  for (const auto &f : w.factors) {
    if (!first) out += '*';
    first = false;
    std::visit(
        [&](const auto &node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, GeneratorFactor>) {
            out += generator_name(node.kind, node.index);
          } else if constexpr (std::is_same_v<T, VariableFactor>) {
            out += node.name;
          } else if constexpr (std::is_same_v<T, CommutatorFactor>) {
            out += '[' + format_word(node.left) + ',' + format_word(node.right) + ']';
          } else {
            out += '(' + format_word(node.inner) + ')';
          }
          out += format_exponent(node.exponent);
        },
        f.node);
  }
  return out;
}

std::string format_equation(const Equation &eq) {
  return format_word(eq.lhs) + " = " + format_word(eq.rhs);
}

} // namespace neq
