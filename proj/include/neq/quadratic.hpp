#pragma once

#include "neq/lattice.hpp"
#include "neq/malcev.hpp"
#include "neq/polynomial.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace neq {

struct SolverConfig {
  std::int64_t search_bound = 64;
  std::int64_t modulus_limit = 64;
  std::uint64_t branch_budget = 1'000'000;
  std::uint64_t residue_budget = 10'000'000;
  std::int64_t time_budget_ms = 30'000;

  /// Overrides from NEQ_SEARCH_BOUND, NEQ_MODULUS_LIMIT, NEQ_BRANCH_BUDGET,
  /// NEQ_RESIDUE_BUDGET and NEQ_TIME_BUDGET (milliseconds).
  static SolverConfig from_environment(SolverConfig base);
  /// Throws std::invalid_argument unless every field is positive.
  void validate() const;
};

/// Wall-clock limit shared by every stage of one decision.
class Deadline {
public:
  explicit Deadline(std::int64_t budget_ms);
  bool expired() const;

private:
  std::chrono::steady_clock::time_point end_;
};

enum class Verdict { Sat, Unsat, Unknown };

enum class CertificateKind {
  GcdFailure,         // linear rows: multipliers, divisor
  EmptyCongruence,    // congruences have no solution modulo `modulus`
  ModularObstruction, // quadratic has no zero modulo `modulus`
  DefiniteExhaustion, // sign*Q definite with ratio mu_num/mu_den, no zero with |y| <= bound
  Discriminant,       // univariate: no integer root
  NonzeroConstant,    // quadratic is a nonzero constant
  AllBranchesUnsat,   // every child case is Unsat
};

struct Certificate {
  CertificateKind kind = CertificateKind::NonzeroConstant;
  IntVector multipliers;
  Integer divisor = 0;
  std::int64_t modulus = 0;
  Integer bound = 0;
  Integer mu_num = 0, mu_den = 1;
  int sign = 1;
  Integer discriminant = 0;
  std::vector<Certificate> children;
  std::string detail;
};

std::string certificate_kind_name(CertificateKind kind);
/// One-line human summary.
std::string describe_certificate(const Certificate &cert);

struct DecisionStats {
  std::uint64_t branches = 0;
  std::uint64_t classes = 0;
  std::uint64_t points = 0;
};

struct DecisionResult {
  Verdict verdict = Verdict::Unknown;
  std::vector<Integer> integer_witness; // polynomial-level witness
  Assignment witness;                   // group-level witness
  std::optional<Certificate> certificate;
  std::int64_t search_bound = 0; // Unknown: bound fully explored
  std::string reason;
  DecisionStats stats;
};

std::string verdict_name(Verdict v);

/*
 * Decides Q(y) = 0 over the integers, Q of degree <= 2 in `unknown_count`
 * unknowns (-1: Q.variable_bound()). Sat carries a verified witness, Unsat a
 * certificate accepted by verify_quadratic_certificate.
 */
DecisionResult decide_quadratic(const IntPolynomial &Q, const SolverConfig &cfg, int unknown_count = -1);
DecisionResult decide_quadratic(const IntPolynomial &Q, const SolverConfig &cfg, int unknown_count,
                                const Deadline &deadline);

/// Re-checks an Unsat certificate for Q = 0 from scratch.
bool verify_quadratic_certificate(const IntPolynomial &Q, const Certificate &cert,
                                  std::uint64_t budget = 100'000'000);

/// True iff the symmetric integer matrix is positive definite.
bool is_positive_definite(const IntMatrix &G);

} // namespace neq
