#pragma once

#include "neq/integer.hpp"
#include "neq/word.hpp"

#include <map>
#include <string>
#include <vector>

namespace neq {

/// Free nilpotent group N(step, rank).
struct FreeNilpotentSpec {
  int step = 2;
  int rank = 2;

  /// Throws std::invalid_argument unless step >= 2 and rank >= 2.
  void validate() const;
  friend bool operator==(const FreeNilpotentSpec &, const FreeNilpotentSpec &) = default;
};

/*
 * Element of the free associative ring over X_1..X_rank truncated above
 * degree `step`. Coefficients are stored densely: the monomial X_{w1}..X_{wL}
 * sits at offset(L) + (w1..wL read in base rank).
 */
class TruncatedFreePoly {
public:
  /// The unit 1.
  explicit TruncatedFreePoly(FreeNilpotentSpec spec);
  /// Image 1 + X_i of the generator a_i (i is 1-based).
  static TruncatedFreePoly generator(FreeNilpotentSpec spec, int i);

  const FreeNilpotentSpec &spec() const { return spec_; }
  /// Coefficient of X_{w[0]+1}..X_{w[L-1]+1}; letters are 0-based.
  const Integer &coefficient(const std::vector<int> &word) const;
  void set_coefficient(const std::vector<int> &word, Integer value);
  bool is_one() const;

  friend TruncatedFreePoly operator*(const TruncatedFreePoly &u, const TruncatedFreePoly &v);
  friend bool operator==(const TruncatedFreePoly &a, const TruncatedFreePoly &b) {
    return a.spec_ == b.spec_ && a.coeffs_ == b.coeffs_;
  }
  /// Inverse of a unit with constant term 1, as the truncated geometric series.
  TruncatedFreePoly inverse() const;
  TruncatedFreePoly power(std::int64_t exponent) const;

  /// Terms by increasing degree, e.g. "1 + X1*X2 - X2*X1".
  std::string to_string() const;

private:
  std::size_t index(const std::vector<int> &word) const;

  FreeNilpotentSpec spec_;
  std::vector<std::size_t> offset_; // offset_[L] = first index of degree L; offset_[step+1] = size
  std::vector<Integer> coeffs_;
};

/// x^-1 y^-1 x y.
TruncatedFreePoly commutator(const TruncatedFreePoly &x, const TruncatedFreePoly &y);

using MagnusAssignment = std::map<std::string, TruncatedFreePoly>;

/*
 * Evaluates a word over a1..a_rank ('c' stands for [a1,a2]) and assigned
 * variables. b- and d-generators are rejected with std::invalid_argument;
 * missing variables raise UnassignedVariable.
 */
TruncatedFreePoly magnus_eval_word(const Word &w, const MagnusAssignment &assignment, FreeNilpotentSpec spec);
TruncatedFreePoly magnus_eval_word(const Word &w, FreeNilpotentSpec spec);

bool magnus_is_identity(const Word &w, const MagnusAssignment &assignment, FreeNilpotentSpec spec);
bool magnus_holds(const Equation &eq, const MagnusAssignment &assignment, FreeNilpotentSpec spec);

/// Evaluates constant words (variable-free) into a Magnus assignment.
MagnusAssignment magnus_assignment(const std::map<std::string, Word> &values, FreeNilpotentSpec spec);

} // namespace neq
