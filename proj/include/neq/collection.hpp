#pragma once

#include "neq/malcev.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace neq {

/// A generator letter or its inverse.
struct Letter {
  GenKind kind = GenKind::A;
  int index = 1;
  int sign = 1; // +1 or -1

  friend bool operator==(const Letter &, const Letter &) = default;
};

class RewriteBudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Flattens a word made only of generator factors into letters
/// (a1^3 -> a1 a1 a1). Throws std::invalid_argument on variables, brackets
/// or parentheses.
std::vector<Letter> letters_of(const Word &w);

/// Letters back into a word with unit exponents.
Word word_of(const std::vector<Letter> &letters);

/*
 * Normal form by string rewriting only:
 *   - b_i^-1 -> b_i^(l_i - 1) * (b_i^(l_i))^-1, the latter central;
 *   - central letters c, d_t migrate to the right freely;
 *   - x_v^e x_u^f -> x_u^f x_v^e [x_u, x_v]^(-e f) for u < v;
 *   - x x^-1 -> 1;
 *   - l_i adjacent copies of b_i -> the declared central power.
 * Never consults multiply().
 */
MalcevCoord collection_oracle_nf(const std::vector<Letter> &letters, const MalcevPresentation &p,
                                 std::uint64_t step_budget = 10'000'000);

} // namespace neq
