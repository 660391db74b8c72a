#pragma once

#include "neq/reducer.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace neq {

/// Union of residue classes modulo `modulus`, each a vector of residues in
/// {0..modulus-1}. Classes are listed in lexicographic order.
struct ResidueClassSet {
  std::int64_t modulus = 1;
  std::vector<std::vector<std::int64_t>> classes;

  bool empty() const { return classes.empty(); }
  bool contains(const std::vector<Integer> &point) const;
};

class ResidueBudgetExceeded : public std::runtime_error {
public:
  ResidueBudgetExceeded(const Integer &needed, std::uint64_t budget);
};

/// lcm of the moduli (1 when there are none).
std::int64_t congruence_modulus(const std::vector<Congruence> &congruences);

/// True iff `point` satisfies every congruence.
bool satisfies(const std::vector<Congruence> &congruences, const std::vector<Integer> &point);

/*
 * All vectors of (Z_M)^m satisfying every congruence, M the lcm of the
 * moduli. Throws ResidueBudgetExceeded when M^m exceeds `budget`.
 */
ResidueClassSet enumerate_congruence_classes(const std::vector<Congruence> &congruences, int m,
                                             std::uint64_t budget = 10'000'000);

} // namespace neq
