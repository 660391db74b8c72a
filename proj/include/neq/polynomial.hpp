#pragma once

#include "neq/integer.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace neq {

/// Monomial of degree <= 2 over unknowns y_0, y_1, ...; `first <= second`,
/// -1 marks an absent factor. {-1,-1} is 1, {-1,v} is y_v, {u,v} is y_u y_v.
struct Monomial {
  int first = -1;
  int second = -1;

  int degree() const { return (first >= 0) + (second >= 0); }
  static Monomial one() { return {}; }
  static Monomial linear(int v) { return {-1, v}; }
  static Monomial quadratic(int u, int v) { return u <= v ? Monomial{u, v} : Monomial{v, u}; }

  friend bool operator==(const Monomial &, const Monomial &) = default;
};

/// Graded order: constant, then linear by index, then quadratic lexicographic.
struct MonomialOrder {
  bool operator()(const Monomial &a, const Monomial &b) const {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  }
};

class DegreeOverflow : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Integer polynomial of degree <= 2. Zero coefficients are never stored.
class IntPolynomial {
public:
  using Terms = std::map<Monomial, Integer, MonomialOrder>;

  IntPolynomial() = default;
  explicit IntPolynomial(Integer constant);

  static IntPolynomial variable(int v, Integer coefficient = 1);

  const Terms &terms() const { return terms_; }
  int degree() const;
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return degree() <= 0; }

  Integer coefficient(const Monomial &m) const;
  Integer constant_term() const { return coefficient(Monomial::one()); }
  Integer linear_coefficient(int v) const { return coefficient(Monomial::linear(v)); }
  Integer quadratic_coefficient(int u, int v) const { return coefficient(Monomial::quadratic(u, v)); }

  void add_term(const Monomial &m, const Integer &coefficient);

  /// Highest unknown index + 1.
  int variable_bound() const;
  /// Unknowns with a nonzero coefficient somewhere.
  std::vector<int> support() const;
  /// True when y_v occurs only in the linear monomial y_v.
  bool only_linear_in(int v) const;

  IntPolynomial &operator+=(const IntPolynomial &o);
  IntPolynomial &operator-=(const IntPolynomial &o);
  IntPolynomial &operator*=(const Integer &k);
  IntPolynomial operator-() const;
  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial &b) { return a += b; }
  friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial &b) { return a -= b; }
  friend IntPolynomial operator*(IntPolynomial a, const Integer &k) { return a *= k; }
  /// Throws DegreeOverflow if the product has degree > 2.
  friend IntPolynomial operator*(const IntPolynomial &a, const IntPolynomial &b);

  friend bool operator==(const IntPolynomial &a, const IntPolynomial &b) { return a.terms_ == b.terms_; }

  Integer evaluate(const std::vector<Integer> &point) const;

  /// Coefficients reduced into {0..m-1}; zero terms dropped.
  IntPolynomial reduced_mod(const Integer &m) const;

  /// Content: gcd of all coefficients (0 for the zero polynomial).
  Integer content() const;

  /// Composes with y = offset + sum_j basis[j] * t_j; result is over t.
  IntPolynomial substitute(const std::vector<Integer> &offset, const std::vector<std::vector<Integer>> &basis) const;

  /// Renames unknown i to mapping[i]; mapping[i] < 0 is an error if used.
  IntPolynomial remap(const std::vector<int> &mapping) const;

  std::string to_string(const std::vector<std::string> &names) const;
  /// Uses y1, y2, ... as names.
  std::string to_string() const;

private:
  Terms terms_;
};

} // namespace neq
