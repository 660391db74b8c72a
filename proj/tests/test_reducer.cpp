#include "support.hpp"

#include "neq/reducer.hpp"

#include <doctest.h>

#include <algorithm>

using namespace neq;
using namespace neq::testing;

namespace {

IntPolynomial y(int v, Integer k = 1) { return IntPolynomial::variable(v, k); }
IntPolynomial constant(Integer k) { return IntPolynomial(k); }

Word random_equation_word(Rng &rng, const MalcevPresentation &p, const std::vector<std::string> &vars, int depth = 0) {
  Word w;
  const int len = static_cast<int>(uniform(rng, 1, depth == 0 ? 6 : 2));
  for (int i = 0; i < len; ++i) {
    const auto pick = uniform(rng, 0, depth == 0 ? 5 : 3);
    const auto e = uniform(rng, -3, 3);
    if (pick <= 1) {
      w.factors.push_back(var(vars[uniform(rng, 0, vars.size() - 1)], e));
    } else if (pick <= 3) {
      auto letters = random_letters(rng, p, 1);
      if (letters.empty()) continue;
      w.factors.push_back(gen(letters[0].kind, letters[0].index, e));
    } else if (pick == 4) {
      w.factors.push_back(
          comm(random_equation_word(rng, p, vars, depth + 1), random_equation_word(rng, p, vars, depth + 1), e));
    } else {
      w.factors.push_back(group(random_equation_word(rng, p, vars, depth + 1), e));
    }
  }
  return w;
}

std::vector<Integer> unknowns_of(const ConstraintBranch &b, const Assignment &a, const MalcevPresentation &p) {
  std::vector<Integer> out;
  for (const auto &v : b.variables) {
    const MalcevCoord &g = a.at(v);
    for (auto x : g.A) out.emplace_back(x);
    out.emplace_back(g.C);
  }
  (void)p;
  return out;
}

bool branch_holds(const ConstraintBranch &b, const std::vector<Integer> &u) {
  for (const auto &row : b.linear)
    if (row.evaluate(u) != 0) return false;
  for (const auto &c : b.congruences)
    if (c.poly.evaluate(u) % c.modulus != 0) return false;
  return b.quadratic.evaluate(u) == 0;
}

bool torsion_matches(const ConstraintBranch &b, const Assignment &a) {
  for (std::size_t j = 0; j < b.variables.size(); ++j) {
    const MalcevCoord &g = a.at(b.variables[j]);
    if (!std::equal(g.B.begin(), g.B.end(), b.torsion[j].B.begin(), b.torsion[j].B.end())) return false;
    if (!std::equal(g.D.begin(), g.D.end(), b.torsion[j].D.begin(), b.torsion[j].D.end())) return false;
  }
  return true;
}

// Counts torsion assignments whose b-coordinates vanish, using evaluate_word
// with zero A and C parts. The b-part of a product never depends on them.
std::uint64_t surviving_cases(const Word &w, const std::vector<std::string> &vars, const MalcevPresentation &p) {
  std::vector<std::int64_t> radix;
  for (std::size_t j = 0; j < vars.size(); ++j) {
    for (auto l : p.b_orders()) radix.push_back(l);
    for (auto k : p.d_orders()) radix.push_back(k);
  }
  std::vector<std::int64_t> digit(radix.size(), 0);
  std::uint64_t count = 0, total = 0;
  while (true) {
    Assignment a;
    std::size_t pos = 0;
    for (const auto &v : vars) {
      MalcevCoord g = identity(p);
      for (auto &b : g.B) b = digit[pos++];
      for (auto &d : g.D) d = digit[pos++];
      a[v] = g;
    }
    MalcevCoord value = evaluate_word(w, a, p);
    ++total;
    if (std::all_of(value.B.begin(), value.B.end(), [](auto b) { return b == 0; })) ++count;
    std::size_t i = radix.size();
    while (i > 0 && ++digit[i - 1] == radix[i - 1]) digit[--i] = 0;
    if (i == 0) break;
  }
  return total == 1 ? 1 : count;
}

} // namespace

TEST_CASE("Heisenberg collection examples") {
  const auto h = heisenberg();
  auto branches = reduce_equation(eq("[a1,x]*c^-1 = 1", h), h);
  REQUIRE(branches.size() == 1);
  CHECK(branches[0].unknowns == std::vector<std::string>{"x.A1", "x.A2", "x.C"});
  CHECK(branches[0].linear.empty());
  CHECK(branches[0].congruences.empty());
  CHECK(branches[0].quadratic == y(1) - constant(1));

  // x = (p,q,r) = unknowns 0,1,2.
  branches = reduce_equation(eq("x^2*a1^-1 = 1", h), h);
  REQUIRE(branches.size() == 1);
  REQUIRE(branches[0].linear.size() == 2);
  CHECK(branches[0].linear[0] == y(0, 2) - constant(1));
  CHECK(branches[0].linear[1] == y(1, 2));
  IntPolynomial q = y(2, 2) + y(1, 2);
  q.add_term(Monomial::quadratic(0, 1), -1);
  CHECK(branches[0].quadratic == q);

  branches = reduce_equation(eq("x*x^-1 = 1", h), h);
  REQUIRE(branches.size() == 1);
  CHECK(branches[0].linear.empty());
  CHECK(branches[0].quadratic.is_zero());
}

TEST_CASE("torsion branches for x^2 = a1^2*c") {
  const auto p = inconsistent_torsion();
  auto branches = reduce_equation(eq("x^2 = a1^2*c", p), p);
  REQUIRE(branches.size() == 2);
  CHECK(branches[0].torsion[0].B[0] == 0);
  CHECK(branches[1].torsion[0].B[0] == 1);
  // Unknowns: p = x.A1 (0), r = x.C (1).
  for (const auto &b : branches) {
    REQUIRE(b.linear.size() == 1);
    CHECK(b.linear[0] == y(0, 2) - constant(2));
  }
  CHECK(branches[0].quadratic == y(1, 2) - constant(1));
  CHECK(branches[1].quadratic == y(1, 2) - y(0) - constant(1));
  MalcevCoord x = evaluate_word(parse_word("a1*b1*c", p.alphabet()), p);
  CHECK(is_identity(evaluate_word(normalized(eq("x^2 = a1^2*c", p)), {{"x", x}}, p)));
}

TEST_CASE("constant equation keeps its single case with unsatisfiable rows") {
  const auto p = torsion_small();
  auto branches = reduce_equation(eq("b1 = 1", p), p);
  REQUIRE(branches.size() == 1);
  bool contradiction = false;
  for (const auto &row : branches[0].linear) contradiction |= row.is_constant() && !row.is_zero();
  CHECK(contradiction);
}

TEST_CASE("branch budget is enforced") {
  const auto p = torsion_mixed();
  CHECK(torsion_case_count(2, p) == 1024);
  CHECK_THROWS_AS(reduce_equation(eq("x*y = 1", p), p, 1000), BranchBudgetExceeded);
  CHECK_NOTHROW(reduce_equation(eq("x*y = 1", p), p, 1024));
}

TEST_CASE("branches are ordered and counted by the b-residual oracle") {
  const std::vector<MalcevPresentation> groups = {heisenberg(), torsion_small(), torsion_mixed()};
  Rng rng(31);
  for (const auto &p : groups) {
    for (int trial = 0; trial < 40; ++trial) {
      const std::vector<std::string> vars = trial % 2 ? std::vector<std::string>{"x"} : std::vector<std::string>{"x", "y"};
      Word w = random_equation_word(rng, p, vars);
      Equation e{w, {}};
      auto branches = reduce_equation(e, p);
      const auto used = collect_variables(e);
      REQUIRE(branches.size() == surviving_cases(w, used, p));
      if (!p.has_torsion()) REQUIRE(branches.size() == 1);
      for (std::size_t i = 1; i < branches.size(); ++i) {
        auto key = [](const ConstraintBranch &b) {
          std::vector<std::int64_t> k;
          for (const auto &t : b.torsion) {
            k.insert(k.end(), t.B.begin(), t.B.end());
            k.insert(k.end(), t.D.begin(), t.D.end());
          }
          return k;
        };
        REQUIRE(key(branches[i - 1]) < key(branches[i]));
      }
      for (const auto &b : branches) {
        for (const auto &row : b.linear) REQUIRE(row.degree() <= 1);
        for (const auto &c : b.congruences)
          REQUIRE(std::find(p.d_orders().begin(), p.d_orders().end(), c.modulus) != p.d_orders().end());
      }
    }
  }
}

TEST_CASE("constraints hold exactly when the equation does") {
  const std::vector<MalcevPresentation> groups = {heisenberg(), torsion_small(), torsion_mixed()};
  Rng rng(32);
  int satisfied = 0;
  for (const auto &p : groups) {
    for (int trial = 0; trial < 120; ++trial) {
      const std::vector<std::string> vars{"x", "y"};
      Word w = random_equation_word(rng, p, vars);
      Assignment base;
      for (const auto &v : vars) base[v] = random_coord(rng, p, 3);
      // Make the equation true at `base`.
      Equation e{w, normal_form_word(evaluate_word(w, base, p), p)};
      const auto used = collect_variables(e);
      auto branches = reduce_equation(e, p);
      for (int probe = 0; probe < 25; ++probe) {
        Assignment a = base;
        if (probe > 0)
          for (const auto &v : vars)
            if (uniform(rng, 0, 1)) {
              MalcevCoord &g = a[v];
              g.C += uniform(rng, -1, 1);
              if (!g.A.empty()) g.A[uniform(rng, 0, g.A.size() - 1)] += uniform(rng, -1, 1);
              if (!g.B.empty() && uniform(rng, 0, 3) == 0) g.B[0] = (g.B[0] + 1) % p.b_orders()[0];
            }
        const bool holds = is_identity(evaluate_word(normalized(e), a, p));
        bool constrained = false;
        for (const auto &b : branches)
          if (torsion_matches(b, a) && branch_holds(b, unknowns_of(b, a, p))) constrained = true;
        REQUIRE_MESSAGE(holds == constrained, format_equation(e));
        satisfied += holds;
        if (holds)
          for (const auto &b : branches)
            if (torsion_matches(b, a))
              for (std::size_t j = 0; j < used.size(); ++j)
                REQUIRE(variable_coord(b, static_cast<int>(j), unknowns_of(b, a, p), p) == a.at(b.variables[j]));
      }
    }
  }
  CHECK(satisfied >= 360);
}

TEST_CASE("symbolic_collect rejects unlisted variables") {
  const auto h = heisenberg();
  CHECK_THROWS_AS(symbolic_collect(eq("x*y = 1", h), {"x"}, {TorsionPart{}}, h), std::invalid_argument);
}
