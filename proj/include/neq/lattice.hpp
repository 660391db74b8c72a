#pragma once

#include "neq/integer.hpp"
#include "neq/polynomial.hpp"

#include <optional>
#include <vector>

namespace neq {

using IntVector = std::vector<Integer>;
using IntMatrix = std::vector<IntVector>;

/// offset + sum_i c_i basis[i], c_i integers; basis is Q-linearly independent.
struct AffineLattice {
  IntVector offset;
  IntMatrix basis;

  std::size_t dimension() const { return basis.size(); }
  std::size_t ambient() const { return offset.size(); }
  /// offset + sum_i params[i] * basis[i].
  IntVector point(const IntVector &params) const;
};

/*
 * Infeasibility witness for A y = b: a row combination lambda such that
 * every entry of lambda^T A is divisible by `divisor` while lambda^T b is
 * not (divisor 0 means lambda^T A = 0 and lambda^T b != 0).
 */
struct GcdCertificate {
  IntVector multipliers;
  Integer divisor;
};

struct LinearSolution {
  std::optional<AffineLattice> lattice;
  std::optional<GcdCertificate> certificate; // set iff lattice is empty
};

/// Rows are degree <= 1 polynomials in `unknown_count` unknowns, each = 0.
LinearSolution solve_linear_system(const std::vector<IntPolynomial> &rows, int unknown_count);

/// Dense form: A y = b.
LinearSolution solve_linear_system(const IntMatrix &A, const IntVector &b, int unknown_count);

/// Checks a certificate against the rows; true iff it proves infeasibility.
bool verify_gcd_certificate(const std::vector<IntPolynomial> &rows, int unknown_count, const GcdCertificate &cert);

/// Dense form of the check above.
bool verify_gcd_certificate(const IntMatrix &A, const IntVector &b, const GcdCertificate &cert);

/// Splits degree <= 1 rows into A y = b.
void rows_to_matrix(const std::vector<IntPolynomial> &rows, int unknown_count, IntMatrix &A, IntVector &b);

/*
 * Points of `lattice` whose coordinates at `positions` are congruent to
 * `residues` modulo `modulus`. Empty result carries a certificate for the
 * auxiliary system in the lattice parameters.
 */
struct ClassIntersection {
  std::optional<AffineLattice> lattice;
  std::optional<GcdCertificate> certificate;
};

/// The auxiliary system in (c, z): sum_j basis[j][i] c_j + modulus z_i =
/// residue_i - offset_i for each listed position i.
void residue_class_system(const AffineLattice &lattice, const std::vector<int> &positions, const IntVector &residues,
                          const Integer &modulus, IntMatrix &A, IntVector &b);

ClassIntersection intersect_with_residue_class(const AffineLattice &lattice, const std::vector<int> &positions,
                                               const IntVector &residues, const Integer &modulus);

/// Size-reduces the basis (pairwise reduction, then offset reduction) so that
/// small parameters map to small points. The lattice set is unchanged.
AffineLattice reduce_basis(AffineLattice lattice);

} // namespace neq
