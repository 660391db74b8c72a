#include "neq/congruence.hpp"

namespace neq {

ResidueBudgetExceeded::ResidueBudgetExceeded(const Integer &needed, std::uint64_t budget)
    : std::runtime_error("residue enumeration needs " + needed.str() + " points, budget is " +
                         std::to_string(budget)) {}

bool ResidueClassSet::contains(const std::vector<Integer> &point) const {
  std::vector<std::int64_t> r;
  for (const auto &v : point) r.push_back(static_cast<std::int64_t>(mod_floor(v, Integer(modulus))));
  for (const auto &c : classes)
    if (c == r) return true;
  return false;
}

std::int64_t congruence_modulus(const std::vector<Congruence> &congruences) {
  std::int64_t M = 1;
  for (const auto &c : congruences) {
    if (c.modulus <= 0) throw std::invalid_argument("congruence modulus must be positive");
    M = lcm(M, c.modulus);
  }
  return M;
}

bool satisfies(const std::vector<Congruence> &congruences, const std::vector<Integer> &point) {
  for (const auto &c : congruences)
    if (mod_floor(c.poly.evaluate(point), Integer(c.modulus)) != 0) return false;
  return true;
}

namespace {

struct ReducedTerm {
  int first, second;
  std::int64_t coefficient; // in {0..modulus-1}
};

struct ReducedCongruence {
  std::int64_t modulus;
  std::vector<ReducedTerm> terms;
};

bool holds(const ReducedCongruence &c, const std::vector<std::int64_t> &y) {
  const __int128 m = c.modulus;
  __int128 sum = 0;
  for (const auto &t : c.terms) {
    __int128 v = t.coefficient;
    if (t.first >= 0) v = v * y[t.first] % m;
    if (t.second >= 0) v = v * y[t.second] % m;
    sum += v;
  }
  return sum % m == 0;
}

} // namespace

ResidueClassSet enumerate_congruence_classes(const std::vector<Congruence> &congruences, int m,
                                             std::uint64_t budget) {
  ResidueClassSet out;
  out.modulus = congruence_modulus(congruences);
  const std::int64_t M = out.modulus;

  Integer needed = 1;
  for (int i = 0; i < m; ++i) needed *= M;
  if (needed > budget) throw ResidueBudgetExceeded(needed, budget);

  std::vector<ReducedCongruence> reduced;
  for (const auto &c : congruences) {
    if (c.poly.variable_bound() > m) throw std::invalid_argument("congruence uses an unknown beyond the declared count");
    ReducedCongruence r{c.modulus, {}};
    for (const auto &[mono, coeff] : c.poly.terms()) {
      auto k = static_cast<std::int64_t>(mod_floor(coeff, Integer(c.modulus)));
      if (k != 0) r.terms.push_back({mono.first, mono.second, k});
    }
    reduced.push_back(std::move(r));
  }

  std::vector<std::int64_t> y(m, 0);
  for (;;) {
    bool ok = true;
    for (const auto &c : reduced)
      if (!holds(c, y)) {
        ok = false;
        break;
      }
    if (ok) out.classes.push_back(y);
    int pos = m;
    while (pos-- > 0) {
      if (++y[pos] < M) break;
      y[pos] = 0;
    }
    if (pos < 0) break;
  }
  return out;
}

} // namespace neq
