#include "neq/decide.hpp"

#include <algorithm>
#include <limits>

namespace neq {

QuadraticSystem system_of(const ConstraintBranch &branch) {
  return {static_cast<int>(branch.unknowns.size()), branch.linear, branch.congruences, branch.quadratic};
}

bool satisfies(const QuadraticSystem &s, const std::vector<Integer> &y) {
  if (static_cast<int>(y.size()) != s.unknowns) return false;
  for (const auto &row : s.linear)
    if (row.evaluate(y) != 0) return false;
  return satisfies(s.congruences, y) && s.quadratic.evaluate(y) == 0;
}

namespace {

struct ClassPlan {
  std::optional<GcdCertificate> infeasible;
  AffineLattice lattice;
  std::vector<int> involved;
  ResidueClassSet classes;
};

/// Deterministic preparation shared by the solver and the verifier.
ClassPlan plan(const QuadraticSystem &s, const SolverConfig &cfg) {
  ClassPlan out;
  LinearSolution sol = solve_linear_system(s.linear, s.unknowns);
  if (!sol.lattice) {
    out.infeasible = sol.certificate;
    return out;
  }
  out.lattice = reduce_basis(std::move(*sol.lattice));

  std::vector<int> mapping(s.unknowns, -1);
  for (const auto &c : s.congruences)
    for (int v : c.poly.support()) mapping.at(v) = 0;
  for (int v = 0; v < s.unknowns; ++v)
    if (mapping[v] == 0) {
      mapping[v] = static_cast<int>(out.involved.size());
      out.involved.push_back(v);
    }
  std::vector<Congruence> compact;
  for (const auto &c : s.congruences) compact.push_back({c.poly.remap(mapping), c.modulus});
  out.classes = enumerate_congruence_classes(compact, static_cast<int>(out.involved.size()), cfg.residue_budget);
  return out;
}

IntVector residues_of(const std::vector<std::int64_t> &cls) { return {cls.begin(), cls.end()}; }

DecisionResult unknown_result(std::int64_t bound, std::string reason) {
  DecisionResult r;
  r.verdict = Verdict::Unknown;
  r.search_bound = bound;
  r.reason = std::move(reason);
  return r;
}

} // namespace

DecisionResult decide_system(const QuadraticSystem &s, const SolverConfig &cfg) {
  Deadline deadline(cfg.time_budget_ms);
  return decide_system(s, cfg, deadline);
}

DecisionResult decide_system(const QuadraticSystem &s, const SolverConfig &cfg, const Deadline &deadline) {
  ClassPlan pl;
  try {
    pl = plan(s, cfg);
  } catch (const ResidueBudgetExceeded &e) {
    return unknown_result(0, e.what());
  }
  if (pl.infeasible) {
    DecisionResult r;
    r.verdict = Verdict::Unsat;
    Certificate c;
    c.kind = CertificateKind::GcdFailure;
    c.multipliers = pl.infeasible->multipliers;
    c.divisor = pl.infeasible->divisor;
    r.certificate = std::move(c);
    return r;
  }
  if (pl.classes.empty()) {
    DecisionResult r;
    r.verdict = Verdict::Unsat;
    Certificate c;
    c.kind = CertificateKind::EmptyCongruence;
    c.modulus = pl.classes.modulus;
    r.certificate = std::move(c);
    return r;
  }

  DecisionStats stats;
  Certificate all;
  all.kind = CertificateKind::AllBranchesUnsat;
  all.detail = "residue classes mod " + std::to_string(pl.classes.modulus);
  std::optional<DecisionResult> unknown;

  for (const auto &cls : pl.classes.classes) {
    if (deadline.expired()) {
      unknown = unknown_result(0, "time budget exhausted");
      break;
    }
    ++stats.classes;
    ClassIntersection part =
        intersect_with_residue_class(pl.lattice, pl.involved, residues_of(cls), Integer(pl.classes.modulus));
    if (!part.lattice) {
      Certificate c;
      c.kind = CertificateKind::GcdFailure;
      c.multipliers = part.certificate->multipliers;
      c.divisor = part.certificate->divisor;
      c.detail = "residue class misses the lattice";
      all.children.push_back(std::move(c));
      continue;
    }
    AffineLattice sub = reduce_basis(std::move(*part.lattice));
    IntPolynomial q = s.quadratic.substitute(sub.offset, sub.basis);
    DecisionResult r = decide_quadratic(q, cfg, static_cast<int>(sub.dimension()), deadline);
    stats.points += r.stats.points;
    if (r.verdict == Verdict::Sat) {
      DecisionResult out;
      out.verdict = Verdict::Sat;
      out.integer_witness = sub.point(r.integer_witness);
      if (!satisfies(s, out.integer_witness)) throw std::logic_error("lattice reconstruction produced a non-solution");
      out.stats = stats;
      return out;
    }
    if (r.verdict == Verdict::Unsat) {
      all.children.push_back(std::move(*r.certificate));
      continue;
    }
    if (!unknown || r.search_bound < unknown->search_bound) unknown = std::move(r);
  }

  DecisionResult out;
  if (unknown) {
    out = std::move(*unknown);
    out.integer_witness.clear();
    out.certificate.reset();
  } else {
    out.verdict = Verdict::Unsat;
    out.certificate = std::move(all);
  }
  out.stats = stats;
  return out;
}

bool verify_system_certificate(const QuadraticSystem &s, const Certificate &cert, const SolverConfig &cfg) {
  if (cert.kind == CertificateKind::GcdFailure)
    return verify_gcd_certificate(s.linear, s.unknowns, GcdCertificate{cert.multipliers, cert.divisor});
  ClassPlan pl;
  try {
    pl = plan(s, cfg);
  } catch (const ResidueBudgetExceeded &) {
    return false;
  }
  if (pl.infeasible) return false;
  if (cert.kind == CertificateKind::EmptyCongruence) return pl.classes.empty() && cert.modulus == pl.classes.modulus;
  if (cert.kind != CertificateKind::AllBranchesUnsat) return false;
  if (cert.children.size() != pl.classes.classes.size() || pl.classes.empty()) return false;
  for (std::size_t i = 0; i < cert.children.size(); ++i) {
    const Certificate &child = cert.children[i];
    const IntVector residues = residues_of(pl.classes.classes[i]);
    const Integer M(pl.classes.modulus);
    ClassIntersection part = intersect_with_residue_class(pl.lattice, pl.involved, residues, M);
    if (child.kind == CertificateKind::GcdFailure) {
      if (pl.involved.empty()) return false;
      IntMatrix A;
      IntVector b;
      residue_class_system(pl.lattice, pl.involved, residues, M, A, b);
      if (!verify_gcd_certificate(A, b, GcdCertificate{child.multipliers, child.divisor})) return false;
      continue;
    }
    if (!part.lattice) return false;
    AffineLattice sub = reduce_basis(std::move(*part.lattice));
    IntPolynomial q = s.quadratic.substitute(sub.offset, sub.basis);
    if (!verify_quadratic_certificate(q, child, cfg.residue_budget * 10)) return false;
  }
  return true;
}

namespace {

void require_valid(const MalcevPresentation &p) {
  ValidationReport report = validate_presentation(p);
  if (!report.ok()) {
    std::string msg = "presentation is not consistent:";
    for (const auto &f : report.failures) msg += " " + f + ";";
    throw SchemaError(msg);
  }
}

bool holds(const Equation &eq, const Assignment &a, const MalcevPresentation &p) {
  return is_identity(evaluate_word(normalized(eq), a, p));
}

} // namespace

DecisionResult decide_equation(const Equation &eq, const MalcevPresentation &p, const SolverConfig &cfg) {
  cfg.validate();
  require_valid(p);
  Deadline deadline(cfg.time_budget_ms);

  std::vector<ConstraintBranch> branches;
  try {
    branches = reduce_equation(eq, p, cfg.branch_budget);
  } catch (const BranchBudgetExceeded &e) {
    return unknown_result(0, e.what());
  } catch (const OverflowError &e) {
    return unknown_result(0, std::string("coordinate overflow: ") + e.what());
  }

  DecisionStats stats;
  Certificate all;
  all.kind = CertificateKind::AllBranchesUnsat;
  all.detail = "torsion cases";
  std::optional<DecisionResult> unknown;

  for (const auto &branch : branches) {
    ++stats.branches;
    DecisionResult r = decide_system(system_of(branch), cfg, deadline);
    stats.classes += r.stats.classes;
    stats.points += r.stats.points;
    if (r.verdict == Verdict::Sat) {
      DecisionResult out;
      out.verdict = Verdict::Sat;
      out.integer_witness = r.integer_witness;
      try {
        for (std::size_t j = 0; j < branch.variables.size(); ++j)
          out.witness[branch.variables[j]] = variable_coord(branch, static_cast<int>(j), r.integer_witness, p);
        if (!holds(eq, out.witness, p)) throw std::logic_error("reconstructed witness does not satisfy the equation");
      } catch (const OverflowError &e) {
        // A solution exists, but it does not fit 64-bit group coordinates.
        if (!unknown) unknown = unknown_result(0, std::string("witness exceeds 64-bit coordinates: ") + e.what());
        continue;
      }
      out.stats = stats;
      return out;
    }
    if (r.verdict == Verdict::Unsat) {
      all.children.push_back(std::move(*r.certificate));
      continue;
    }
    if (!unknown || r.search_bound < unknown->search_bound) unknown = std::move(r);
    if (deadline.expired()) break;
  }

  DecisionResult out;
  if (unknown) {
    out = std::move(*unknown);
    out.integer_witness.clear();
    out.certificate.reset();
  } else {
    out.verdict = Verdict::Unsat;
    out.certificate = std::move(all);
  }
  out.stats = stats;
  return out;
}

bool verify_certificate(const Equation &eq, const MalcevPresentation &p, const Certificate &cert,
                        const SolverConfig &cfg) {
  if (cert.kind != CertificateKind::AllBranchesUnsat) return false;
  std::vector<ConstraintBranch> branches;
  try {
    branches = reduce_equation(eq, p, cfg.branch_budget);
  } catch (const std::exception &) {
    return false;
  }
  if (branches.size() != cert.children.size()) return false;
  for (std::size_t i = 0; i < branches.size(); ++i)
    if (!verify_system_certificate(system_of(branches[i]), cert.children[i], cfg)) return false;
  return true;
}

} // namespace neq
