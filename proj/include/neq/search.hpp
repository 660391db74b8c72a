#pragma once

#include "neq/malcev.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>

namespace neq {

class SearchBudgetExceeded : public std::runtime_error {
public:
  explicit SearchBudgetExceeded(std::uint64_t budget);
};

/*
 * Tries every assignment whose a- and c-coordinates lie in [-bound, bound],
 * torsion coordinates over their full range. A/C tuples are visited in
 * increasing l-infinity shells, lexicographically within a shell in the
 * value order 0, 1, -1, 2, -2, ... (variables in order, coordinates
 * A1..An, C); torsion parts vary fastest. Returns the first solution.
 */
std::optional<Assignment> bounded_search(const EquationSystem &system, const MalcevPresentation &p,
                                         std::int64_t bound, std::uint64_t budget = 50'000'000);
std::optional<Assignment> bounded_search(const Equation &eq, const MalcevPresentation &p, std::int64_t bound,
                                         std::uint64_t budget = 50'000'000);

} // namespace neq
