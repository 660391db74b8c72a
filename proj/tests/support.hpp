#pragma once

#include "neq/collection.hpp"
#include "neq/magnus.hpp"
#include "neq/malcev.hpp"
#include "neq/parser.hpp"
#include "neq/presentation.hpp"

#include <random>
#include <string>
#include <vector>

namespace neq::testing {

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng &rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

/// n=1, l=[2], [a1,b1] = c. Fails validation, but multiply() still runs on it.
inline MalcevPresentation inconsistent_torsion() {
  MalcevPresentation p(1, {2}, {});
  p.set_commutator(0, 1, {1, {}});
  return p;
}

/// n=1, l=[2], k=[2]: [a1,b1] = d1, b1^2 = c.
inline MalcevPresentation torsion_small() {
  MalcevPresentation p(1, {2}, {2});
  p.set_commutator(0, 1, {0, {1}});
  p.set_power(0, {1, {0}});
  return p;
}

/// n=2, l=[2,2], k=[2,4] with mixed structure constants.
inline MalcevPresentation torsion_mixed() {
  MalcevPresentation p(2, {2, 2}, {2, 4});
  p.set_commutator(0, 1, {3, {1, 3}}); // [a1,a2]
  p.set_commutator(0, 2, {0, {1, 2}}); // [a1,b1]
  p.set_commutator(1, 3, {0, {0, 2}}); // [a2,b2]
  p.set_commutator(2, 3, {0, {1, 2}}); // [b1,b2]
  p.set_power(0, {1, {1, 0}});
  p.set_power(1, {-2, {0, 3}});
  return p;
}

/// Random flat generator word of length <= max_len over the x- and central generators of p.
inline std::vector<Letter> random_letters(Rng &rng, const MalcevPresentation &p, int max_len) {
  std::vector<Letter> out;
  const int len = static_cast<int>(uniform(rng, 0, max_len));
  const int kinds = p.a_count() + p.b_count() + 1 + p.d_count();
  for (int i = 0; i < len; ++i) {
    int g = static_cast<int>(uniform(rng, 0, kinds - 1));
    int sign = uniform(rng, 0, 1) ? 1 : -1;
    if (g < p.a_count())
      out.push_back({GenKind::A, g + 1, sign});
    else if ((g -= p.a_count()) < p.b_count())
      out.push_back({GenKind::B, g + 1, sign});
    else if (g == p.b_count())
      out.push_back({GenKind::C, 1, sign});
    else
      out.push_back({GenKind::D, g - p.b_count(), sign});
  }
  return out;
}

inline MalcevCoord random_coord(Rng &rng, const MalcevPresentation &p, std::int64_t range) {
  MalcevCoord g = identity(p);
  for (auto &a : g.A) a = uniform(rng, -range, range);
  for (int i = 0; i < p.b_count(); ++i) g.B[i] = uniform(rng, 0, p.b_orders()[i] - 1);
  g.C = uniform(rng, -range, range);
  for (int t = 0; t < p.d_count(); ++t) g.D[t] = uniform(rng, 0, p.d_orders()[t] - 1);
  return g;
}

/// Random word over a1..a_q (and c when q >= 2) with small exponents, used for free nilpotent groups.
inline Word random_free_word(Rng &rng, int rank, int max_len) {
  Word w;
  const int len = static_cast<int>(uniform(rng, 1, max_len));
  for (int i = 0; i < len; ++i) {
    std::int64_t e = uniform(rng, -2, 2);
    if (e == 0) e = 1;
    w.factors.push_back(gen(GenKind::A, static_cast<int>(uniform(rng, 1, rank)), e));
  }
  return w;
}

inline TruncatedFreePoly random_element(Rng &rng, FreeNilpotentSpec spec, int max_len) {
  return magnus_eval_word(random_free_word(rng, spec.rank, max_len), spec);
}

/// x y x^-1 y^-1, the convention under which the textbook expansions
/// [x,yz] = [x,y][y,[x,z]][x,z] and [xy,z] = [x,[y,z]][y,z][x,z] hold.
inline TruncatedFreePoly commutator_right(const TruncatedFreePoly &x, const TruncatedFreePoly &y) {
  return x * y * x.inverse() * y.inverse();
}

/// Left-normed [r1, r2, ..., rk].
inline TruncatedFreePoly nested(const std::vector<TruncatedFreePoly> &r) {
  TruncatedFreePoly acc = r.front();
  for (std::size_t i = 1; i < r.size(); ++i) acc = commutator(acc, r[i]);
  return acc;
}

inline Equation eq(const std::string &text, const MalcevPresentation &p) { return parse_equation(text, p.alphabet()); }

} // namespace neq::testing
