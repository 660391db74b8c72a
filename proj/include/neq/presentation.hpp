#pragma once

#include "neq/word.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace neq {

/// Input document violates the presentation schema.
class SchemaError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// c^c_exp * d_1^d[0] * ... * d_s^d[s-1]
struct CentralElement {
  std::int64_t c = 0;
  std::vector<std::int64_t> d;
};

bool operator==(const CentralElement &a, const CentralElement &b);

/*
 * Two-step nilpotent group with rank-one commutator, given by a Mal'cev
 * basis a_1..a_n (infinite order), b_1..b_r (orders l_i), c (infinite
 * order, central), d_1..d_s (orders k_t, central).
 *
 * The a and b generators are handled uniformly as "x-generators": position
 * u in 0..n-1 is a_{u+1}, position n+i is b_{i+1}. For u < v the table
 * holds [x_u, x_v] as a central element. powers[i] holds b_{i+1}^{l_{i+1}}.
 */
class MalcevPresentation {
public:
  MalcevPresentation() = default;
  MalcevPresentation(int n, std::vector<std::int64_t> l, std::vector<std::int64_t> k);

  int a_count() const { return n_; }
  int b_count() const { return static_cast<int>(l_.size()); }
  int d_count() const { return static_cast<int>(k_.size()); }
  int x_count() const { return n_ + b_count(); }

  const std::vector<std::int64_t> &b_orders() const { return l_; }
  const std::vector<std::int64_t> &d_orders() const { return k_; }

  /// 0 for a-generators, l_i for b_i.
  std::int64_t x_order(int u) const { return u < n_ ? 0 : l_[u - n_]; }

  /// [x_u, x_v] for u < v.
  const CentralElement &commutator(int u, int v) const;
  void set_commutator(int u, int v, CentralElement value);

  /// b_{i+1}^{l_{i+1}}.
  const CentralElement &power(int i) const { return powers_[i]; }
  void set_power(int i, CentralElement value);

  bool has_torsion() const { return !l_.empty() || !k_.empty(); }

  Alphabet alphabet() const { return Alphabet{n_, b_count(), d_count(), true}; }

  /// Name of x-generator u (a1.., b1..).
  std::string x_name(int u) const;

private:
  int n_ = 0;
  std::vector<std::int64_t> l_;
  std::vector<std::int64_t> k_;
  std::vector<CentralElement> table_; // (x_count)^2, upper triangle used
  std::vector<CentralElement> powers_;

  CentralElement normalize(CentralElement value) const;
};

/// The integral Heisenberg group <a1, a2 | [a1,a2] central>, c = [a1,a2].
MalcevPresentation heisenberg();

/// Higher Heisenberg group of dimension 2m+1: [a_{2i-1}, a_{2i}] = c.
MalcevPresentation higher_heisenberg(int m);

struct ValidationReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Checks torsion orders and the torsion-consistency conditions
/// l_i * [b_i, g] = 1 for every generator g.
ValidationReport validate_presentation(const MalcevPresentation &p);

/*
 * Text schema, one item per line, '#' comments:
 *
 *   n = 2
 *   l = 2, 3          # torsion orders of b_1.., may be empty
 *   k = 4             # torsion orders of d_1.., may be empty
 *   [a1,a2] = c
 *   [a1,b1] = c^0 * d1^2
 *   b1^2 = c^-1 * d1
 *
 * JSON schema:
 *
 *   {"n": 2, "l": [2], "k": [4],
 *    "commutators": [{"left": "a1", "right": "b1", "c": 0, "d": [2]}],
 *    "powers": [{"generator": "b1", "c": -1, "d": [1]}]}
 *
 * Missing commutator and power entries are the identity.
 */
MalcevPresentation parse_presentation(std::string_view text);
MalcevPresentation parse_presentation_text(std::string_view text);
MalcevPresentation parse_presentation_json(std::string_view text);

std::string format_presentation_text(const MalcevPresentation &p);
std::string format_presentation_json(const MalcevPresentation &p);

} // namespace neq
