#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace neq {

/// Generator families of a two-step Mal'cev basis: infinite-order a_i,
/// torsion b_i, the central c, and torsion central d_t.
enum class GenKind : std::uint8_t { A, B, C, D };

struct Factor;

/// A product of factors; the empty word is the identity.
struct Word {
  std::vector<Factor> factors;

  bool empty() const { return factors.empty(); }
};

struct GeneratorFactor {
  GenKind kind = GenKind::A;
  int index = 1; // 1-based; always 1 for c
  std::int64_t exponent = 1;
};

struct VariableFactor {
  std::string name;
  std::int64_t exponent = 1;
};

/// [left, right]^exponent with [u,v] = u^-1 v^-1 u v.
struct CommutatorFactor {
  Word left;
  Word right;
  std::int64_t exponent = 1;
};

struct GroupedFactor {
  Word inner;
  std::int64_t exponent = 1;
};

struct Factor {
  std::variant<GeneratorFactor, VariableFactor, CommutatorFactor, GroupedFactor> node;
};

bool operator==(const Word &a, const Word &b);
bool operator==(const GeneratorFactor &a, const GeneratorFactor &b);
bool operator==(const VariableFactor &a, const VariableFactor &b);
bool operator==(const CommutatorFactor &a, const CommutatorFactor &b);
bool operator==(const GroupedFactor &a, const GroupedFactor &b);
bool operator==(const Factor &a, const Factor &b);

/// lhs = rhs, read as lhs * rhs^-1 = 1.
struct Equation {
  Word lhs;
  Word rhs;
};

bool operator==(const Equation &a, const Equation &b);

struct EquationSystem {
  std::vector<Equation> equations;
  std::vector<std::string> variables;
};

/// Bounds on generator indices accepted by the parser.
struct Alphabet {
  int a_count = 0;
  int b_count = 0;
  int d_count = 0;
  bool has_c = true;
};

// Builders used by the encoders and tests.
Factor gen(GenKind kind, int index, std::int64_t exponent = 1);
Factor var(std::string name, std::int64_t exponent = 1);
Factor comm(Word left, Word right, std::int64_t exponent = 1);
Factor group(Word inner, std::int64_t exponent = 1);
Word word(std::vector<Factor> factors);

/// Left-normed nested commutator [w1, w2, ..., wk] = [[w1, w2], ..., wk].
Word nested_commutator(const std::vector<Word> &args);

/// lhs * rhs^-1.
Word normalized(const Equation &eq);

/// Inverse of a word as a word.
Word inverse_word(const Word &w);

/// Variables in order of first occurrence.
std::vector<std::string> collect_variables(const Word &w);
std::vector<std::string> collect_variables(const Equation &eq);

/// Canonical DSL text; parse(format(w)) == w.
std::string format_word(const Word &w);
std::string format_equation(const Equation &eq);

std::string generator_name(GenKind kind, int index);

} // namespace neq
