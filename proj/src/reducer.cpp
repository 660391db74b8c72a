#include "neq/reducer.hpp"

#include <algorithm>
#include <limits>

namespace neq {

BranchBudgetExceeded::BranchBudgetExceeded(std::uint64_t needed, std::uint64_t budget)
    : std::runtime_error("torsion enumeration needs " +
                         (needed == std::numeric_limits<std::uint64_t>::max() ? std::string("more than 2^64")
                                                                              : std::to_string(needed)) +
                         " branches, budget is " + std::to_string(budget)),
      needed_(needed) {}

std::vector<std::string> unknown_names(const std::vector<std::string> &variables, const MalcevPresentation &p) {
  std::vector<std::string> names;
  for (const auto &v : variables) {
    for (int i = 0; i < p.a_count(); ++i) names.push_back(v + ".A" + std::to_string(i + 1));
    names.push_back(v + ".C");
  }
  return names;
}

namespace {

/// Mal'cev coordinates whose a-, c- and d-parts are polynomials in the unknowns.
struct SymbolicCoord {
  std::vector<IntPolynomial> A;
  CoordVector B;
  IntPolynomial C;
  std::vector<IntPolynomial> D; // reduced mod k_t
};

class SymbolicArithmetic {
public:
  explicit SymbolicArithmetic(const MalcevPresentation &p) : p_(p) {}

  SymbolicCoord lift(const MalcevCoord &g) const {
    SymbolicCoord s;
    for (auto a : g.A) s.A.emplace_back(Integer(a));
    s.B = g.B;
    s.C = IntPolynomial(Integer(g.C));
    for (auto d : g.D) s.D.emplace_back(Integer(d));
    return s;
  }

  SymbolicCoord identity() const { return lift(neq::identity(p_)); }

  SymbolicCoord multiply(const SymbolicCoord &g, const SymbolicCoord &h) const {
    const int n = p_.a_count();
    SymbolicCoord out;
    out.A.resize(n);
    for (int i = 0; i < n; ++i) out.A[i] = g.A[i] + h.A[i];
    out.C = g.C + h.C;
    out.D.resize(p_.d_count());
    for (int t = 0; t < p_.d_count(); ++t) out.D[t] = g.D[t] + h.D[t];

    auto x_of = [n](const SymbolicCoord &e, int u) {
      return u < n ? e.A[u] : IntPolynomial(Integer(e.B[u - n]));
    };
    for (int v = 1; v < p_.x_count(); ++v) {
      IntPolynomial gv = x_of(g, v);
      if (gv.is_zero()) continue;
      for (int u = 0; u < v; ++u) {
        IntPolynomial hu = x_of(h, u);
        if (hu.is_zero()) continue;
        const CentralElement &z = p_.commutator(u, v);
        IntPolynomial prod = hu * gv;
        if (z.c != 0) out.C -= prod * Integer(z.c);
        for (int t = 0; t < p_.d_count(); ++t)
          if (z.d[t] != 0) out.D[t] -= prod * Integer(z.d[t]);
      }
    }
    out.B.resize(p_.b_count());
    for (int i = 0; i < p_.b_count(); ++i) {
      std::int64_t sum = g.B[i] + h.B[i];
      const std::int64_t l = p_.b_orders()[i];
      if (sum >= l) {
        sum -= l;
        const CentralElement &z = p_.power(i);
        out.C += IntPolynomial(Integer(z.c));
        for (int t = 0; t < p_.d_count(); ++t) out.D[t] += IntPolynomial(Integer(z.d[t]));
      }
      out.B[i] = sum;
    }
    for (int t = 0; t < p_.d_count(); ++t) out.D[t] = out.D[t].reduced_mod(p_.d_orders()[t]);
    return out;
  }

  SymbolicCoord inverse(const SymbolicCoord &g) const {
    SymbolicCoord h;
    for (const auto &a : g.A) h.A.push_back(-a);
    h.B.resize(p_.b_count());
    for (int i = 0; i < p_.b_count(); ++i) h.B[i] = mod_floor(-g.B[i], p_.b_orders()[i]);
    h.D.assign(p_.d_count(), IntPolynomial{});
    SymbolicCoord central = multiply(g, h);
    h.C = -central.C;
    for (int t = 0; t < p_.d_count(); ++t) h.D[t] = (-central.D[t]).reduced_mod(p_.d_orders()[t]);
    return h;
  }

  SymbolicCoord power(const SymbolicCoord &g, std::int64_t exponent) const {
    if (exponent == 1) return g;
    SymbolicCoord base = exponent < 0 ? inverse(g) : g;
    std::uint64_t e = exponent < 0 ? std::uint64_t(0) - static_cast<std::uint64_t>(exponent)
                                   : static_cast<std::uint64_t>(exponent);
    SymbolicCoord acc = identity();
    while (e > 0) {
      if (e & 1u) acc = multiply(acc, base);
      e >>= 1;
      if (e > 0) base = multiply(base, base);
    }
    return acc;
  }

  SymbolicCoord commutator(const SymbolicCoord &g, const SymbolicCoord &h) const {
    return multiply(multiply(inverse(g), inverse(h)), multiply(g, h));
  }

private:
  const MalcevPresentation &p_;
};

SymbolicCoord evaluate(const Word &w, const std::vector<SymbolicCoord> &vars, const std::vector<std::string> &names,
                       const SymbolicArithmetic &arith, const MalcevPresentation &p) {
  SymbolicCoord acc = arith.identity();
  for (const auto &f : w.factors) {
    SymbolicCoord term = std::visit(
        [&](const auto &node) -> SymbolicCoord {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, GeneratorFactor>) {
            return arith.lift(generator_power(node.kind, node.index, node.exponent, p));
          } else if constexpr (std::is_same_v<T, VariableFactor>) {
            auto it = std::find(names.begin(), names.end(), node.name);
            if (it == names.end()) throw std::invalid_argument("variable '" + node.name + "' has no torsion case");
            return arith.power(vars[it - names.begin()], node.exponent);
          } else if constexpr (std::is_same_v<T, CommutatorFactor>) {
            return arith.power(
                arith.commutator(evaluate(node.left, vars, names, arith, p), evaluate(node.right, vars, names, arith, p)),
                node.exponent);
          } else {
            return arith.power(evaluate(node.inner, vars, names, arith, p), node.exponent);
          }
        },
        f.node);
    acc = arith.multiply(acc, term);
  }
  return acc;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) return std::numeric_limits<std::uint64_t>::max();
  return r;
}

} // namespace

CollectedEquation symbolic_collect(const Equation &eq, const std::vector<std::string> &variables,
                                   const std::vector<TorsionPart> &torsion, const MalcevPresentation &p) {
  if (variables.size() != torsion.size()) throw std::invalid_argument("one torsion part per variable required");
  const int n = p.a_count();
  SymbolicArithmetic arith(p);
  std::vector<SymbolicCoord> vars;
  for (std::size_t j = 0; j < variables.size(); ++j) {
    MalcevCoord shape = identity(p);
    shape.B = torsion[j].B;
    shape.D = torsion[j].D;
    check_coordinates(shape, p);
    SymbolicCoord s;
    for (int i = 0; i < n; ++i) s.A.push_back(IntPolynomial::variable(unknown_index(static_cast<int>(j), i, n)));
    s.B = torsion[j].B;
    s.C = IntPolynomial::variable(unknown_index(static_cast<int>(j), n, n));
    for (auto d : torsion[j].D) s.D.emplace_back(Integer(d));
    vars.push_back(std::move(s));
  }

  SymbolicCoord w = evaluate(normalized(eq), vars, variables, arith, p);

  CollectedEquation out;
  ConstraintBranch &b = out.branch;
  b.variables = variables;
  b.torsion = torsion;
  b.unknowns = unknown_names(variables, p);
  for (auto &row : w.A) {
    if (row.degree() > 1) throw DegreeOverflow("a-coordinate of a collected word is not linear");
    if (!row.is_zero()) b.linear.push_back(std::move(row));
  }
  for (int t = 0; t < p.d_count(); ++t)
    if (!w.D[t].is_zero()) b.congruences.push_back({std::move(w.D[t]), p.d_orders()[t]});
  b.quadratic = std::move(w.C);
  out.b_residual = w.B;
  return out;
}

std::uint64_t torsion_case_count(std::size_t variable_count, const MalcevPresentation &p) {
  std::uint64_t per = 1;
  for (auto l : p.b_orders()) per = saturating_mul(per, static_cast<std::uint64_t>(l));
  for (auto k : p.d_orders()) per = saturating_mul(per, static_cast<std::uint64_t>(k));
  std::uint64_t total = 1;
  for (std::size_t j = 0; j < variable_count; ++j) total = saturating_mul(total, per);
  return total;
}

std::vector<ConstraintBranch> reduce_equation(const Equation &eq, const MalcevPresentation &p,
                                              std::uint64_t branch_budget) {
  const auto variables = collect_variables(eq);
  const std::uint64_t total = torsion_case_count(variables.size(), p);
  if (total > branch_budget) throw BranchBudgetExceeded(total, branch_budget);

  // Odometer over (x.B1.., x.D1.., y.B1.., ...), last digit fastest.
  std::vector<std::int64_t> radices;
  for (std::size_t j = 0; j < variables.size(); ++j) {
    for (auto l : p.b_orders()) radices.push_back(l);
    for (auto k : p.d_orders()) radices.push_back(k);
  }
  std::vector<std::int64_t> digits(radices.size(), 0);
  const std::size_t per = p.b_orders().size() + p.d_orders().size();

  std::vector<ConstraintBranch> branches;
  for (std::uint64_t step = 0; step < total; ++step) {
    std::vector<TorsionPart> torsion(variables.size());
    for (std::size_t j = 0; j < variables.size(); ++j) {
      for (int i = 0; i < p.b_count(); ++i) torsion[j].B.push_back(digits[j * per + i]);
      for (int t = 0; t < p.d_count(); ++t) torsion[j].D.push_back(digits[j * per + p.b_count() + t]);
    }
    CollectedEquation c = symbolic_collect(eq, variables, torsion, p);
    bool consistent = std::all_of(c.b_residual.begin(), c.b_residual.end(), [](auto v) { return v == 0; });
    if (consistent) {
      branches.push_back(std::move(c.branch));
    } else if (total == 1) {
      for (auto v : c.b_residual)
        if (v != 0) c.branch.linear.emplace_back(Integer(v));
      branches.push_back(std::move(c.branch));
    }
    for (std::size_t pos = digits.size(); pos-- > 0;) {
      if (++digits[pos] < radices[pos]) break;
      digits[pos] = 0;
    }
  }
  return branches;
}

MalcevCoord variable_coord(const ConstraintBranch &branch, int j, const std::vector<Integer> &unknowns,
                           const MalcevPresentation &p) {
  const int n = p.a_count();
  MalcevCoord g = identity(p);
  for (int i = 0; i < n; ++i) g.A[i] = to_int64(unknowns.at(unknown_index(j, i, n)));
  g.C = to_int64(unknowns.at(unknown_index(j, n, n)));
  g.B = branch.torsion.at(j).B;
  g.D = branch.torsion.at(j).D;
  return g;
}

} // namespace neq
