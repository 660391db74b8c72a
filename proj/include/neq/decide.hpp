#pragma once

#include "neq/congruence.hpp"
#include "neq/quadratic.hpp"
#include "neq/reducer.hpp"

namespace neq {

/// Linear rows = 0, congruences, and one quadratic = 0 over `unknowns` integers.
struct QuadraticSystem {
  int unknowns = 0;
  std::vector<IntPolynomial> linear;
  std::vector<Congruence> congruences;
  IntPolynomial quadratic;
};

QuadraticSystem system_of(const ConstraintBranch &branch);

/// True iff y satisfies every constraint.
bool satisfies(const QuadraticSystem &s, const std::vector<Integer> &y);

/*
 * Solves the linear rows, splits the solution lattice by the residue classes
 * of the congruences and decides the quadratic on each piece. An Unsat
 * certificate is gcd-failure on the rows, empty-congruence, or
 * all-branches-unsat with one child per residue class.
 */
DecisionResult decide_system(const QuadraticSystem &s, const SolverConfig &cfg);
DecisionResult decide_system(const QuadraticSystem &s, const SolverConfig &cfg, const Deadline &deadline);

bool verify_system_certificate(const QuadraticSystem &s, const Certificate &cert, const SolverConfig &cfg);

/*
 * Decides a single equation over a validated presentation. Sat carries a
 * group assignment checked with evaluate_word; Unsat carries one child
 * certificate per consistent torsion case.
 */
DecisionResult decide_equation(const Equation &eq, const MalcevPresentation &p, const SolverConfig &cfg);

bool verify_certificate(const Equation &eq, const MalcevPresentation &p, const Certificate &cert,
                        const SolverConfig &cfg);

} // namespace neq
