#pragma once

#include "neq/magnus.hpp"
#include "neq/word.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace neq {

/// alpha + sum_j beta_j x_j + sum_{j,k} gamma_jk x_j x_k = 0.
struct DiophEquation {
  Integer alpha = 0;
  std::vector<Integer> beta;                // size n
  std::vector<std::vector<Integer>> gamma;  // n x n
};

struct DiophSystem {
  int variables = 1;
  std::vector<DiophEquation> equations;

  /// Throws std::invalid_argument on a shape mismatch or n < 1.
  void validate() const;
  Integer evaluate(std::size_t equation, const std::vector<Integer> &x) const;
  bool solved_by(const std::vector<Integer> &x) const;
};

class DiophFormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/*
 * JSON: {"variables": n, "equations": [{"alpha": a, "beta": [...],
 * "gamma": [[...], ...]}]}, beta and gamma optional. Text: optional
 * "n = N" line, then one polynomial per line in x1..xN, e.g.
 * "x1*x2 - 6" or "x1^2 = 4"; '#' starts a comment.
 */
DiophSystem parse_dioph_system(std::string_view text);
std::string format_dioph_system(const DiophSystem &s);

enum class EncodingTarget { TwoStep, HigherStep };

/// Variable names: y<j> for y_j and yp<j> for y'_j, j = 1..n.
std::string y_name(int j);
std::string yp_name(int j);

/// Equations over N(2,q) with a = a1, b = a2; auxiliaries for j = 1..n.
EquationSystem encode_two_step(const DiophSystem &s, int rank);

/// Equations over N(p,q), p >= 3, with R = a for p = 3 and [a,b,...,b]
/// (p - 3 copies of b) otherwise.
EquationSystem encode_higher_step(const DiophSystem &s, const FreeNilpotentSpec &spec);

/// The element R of the higher-step encoding.
Word higher_step_base(int step);

/// Two-step: y_j = a^x_j, y'_j = b^x_j. Higher-step: y_j = b^x_j.
std::map<std::string, Word> lift_solution(const std::vector<Integer> &x, EncodingTarget target);

/*
 * Reads x_j as the a-exponent of y_j after checking, in the Magnus oracle for
 * N(2,rank), that the assignment satisfies every auxiliary equation. Throws
 * std::invalid_argument naming the first failing auxiliary.
 */
std::vector<Integer> project_solution(const std::map<std::string, Word> &assignment, const DiophSystem &s, int rank);

} // namespace neq
