#pragma once

#include "neq/malcev.hpp"
#include "neq/polynomial.hpp"
#include "neq/word.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace neq {

/// Concrete torsion coordinates (B, D) of one equation variable.
struct TorsionPart {
  CoordVector B;
  CoordVector D;

  friend bool operator==(const TorsionPart &, const TorsionPart &) = default;
};

/// poly == 0 (mod modulus)
struct Congruence {
  IntPolynomial poly;
  std::int64_t modulus = 1;

  friend bool operator==(const Congruence &, const Congruence &) = default;
};

/*
 * One torsion case of an equation. The unknowns are, per variable x (in
 * order), its a-coordinates x.A1..x.An followed by its c-coordinate x.C.
 * The equation holds for a variable assignment with the recorded torsion
 * parts iff every linear row vanishes, every congruence holds and the
 * quadratic vanishes.
 */
struct ConstraintBranch {
  std::vector<std::string> variables;
  std::vector<TorsionPart> torsion;
  std::vector<std::string> unknowns;
  std::vector<IntPolynomial> linear;
  std::vector<Congruence> congruences;
  IntPolynomial quadratic;
};

class BranchBudgetExceeded : public std::runtime_error {
public:
  BranchBudgetExceeded(std::uint64_t needed, std::uint64_t budget);
  std::uint64_t needed() const { return needed_; }

private:
  std::uint64_t needed_;
};

/// Unknown index of x_j.A_{i+1} (i < n) or x_j.C (i == n).
inline int unknown_index(int variable, int coordinate, int a_count) { return variable * (a_count + 1) + coordinate; }

/// Unknown names for the given variables.
std::vector<std::string> unknown_names(const std::vector<std::string> &variables, const MalcevPresentation &p);

/// Result of collecting w = lhs * rhs^-1 for a fixed torsion assignment.
struct CollectedEquation {
  ConstraintBranch branch;
  /// b-coordinates of the collected word; the case is consistent iff all zero.
  CoordVector b_residual;
};

/// `torsion[j]` fixes the (B, D) parts of variables[j]. Variables of the
/// equation not listed in `variables` cause std::invalid_argument.
CollectedEquation symbolic_collect(const Equation &eq, const std::vector<std::string> &variables,
                                   const std::vector<TorsionPart> &torsion, const MalcevPresentation &p);

/*
 * All torsion cases of a single equation, lexicographic in (variable,
 * torsion coordinate). Cases whose b-coordinates do not vanish are dropped,
 * except when there is only one case, which is then kept with the nonzero
 * b-coordinates as unsatisfiable constant linear rows.
 */
std::vector<ConstraintBranch> reduce_equation(const Equation &eq, const MalcevPresentation &p,
                                              std::uint64_t branch_budget = 1'000'000);

/// Number of torsion cases before filtering: (prod l_i * prod k_t)^variables.
std::uint64_t torsion_case_count(std::size_t variable_count, const MalcevPresentation &p);

/// MalcevCoord of variable j from unknown values and the branch torsion.
MalcevCoord variable_coord(const ConstraintBranch &branch, int j, const std::vector<Integer> &unknowns,
                           const MalcevPresentation &p);

} // namespace neq
