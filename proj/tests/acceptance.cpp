// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "support.hpp"

#include "neq/decide.hpp"
#include "neq/encoders.hpp"
#include "neq/search.hpp"

#include <fmt/core.h>

#include <chrono>
#include <functional>

using namespace neq;
using namespace neq::testing;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict1 {
  bool pass;
  std::string detail;
};

// --- 1 ---------------------------------------------------------------------

Verdict1 multiplication_law() {
  const std::vector<std::pair<std::string, MalcevPresentation>> groups = {
      {"heisenberg", heisenberg()}, {"torsion-small", torsion_small()}, {"torsion-mixed", torsion_mixed()}};
  std::uint64_t pairs = 0, mismatches = 0;
  for (const auto &[name, p] : groups) {
    Rng rng(1001);
    for (int trial = 0; trial < 10000; ++trial) {
      auto u = random_letters(rng, p, 8), v = random_letters(rng, p, 8);
      auto uv = u;
      uv.insert(uv.end(), v.begin(), v.end());
      ++pairs;
      if (multiply(collection_oracle_nf(u, p), collection_oracle_nf(v, p), p) != collection_oracle_nf(uv, p))
        ++mismatches;
    }
  }
  return {mismatches == 0, fmt::format("{} word pairs over 3 presentations, {} mismatches", pairs, mismatches)};
}

// --- 2 ---------------------------------------------------------------------

Word random_heisenberg_equation(Rng &rng) {
  const std::vector<std::string> vars = uniform(rng, 0, 1) ? std::vector<std::string>{"x"}
                                                           : std::vector<std::string>{"x", "y"};
  auto letter = [&]() -> Factor {
    const auto e = uniform(rng, -3, 3);
    switch (uniform(rng, 0, 3)) {
    case 0: return gen(GenKind::A, 1, e);
    case 1: return gen(GenKind::A, 2, e);
    case 2: return gen(GenKind::C, 1, e);
    default: return var(vars[uniform(rng, 0, vars.size() - 1)], e);
    }
  };
  Word w;
  const int len = static_cast<int>(uniform(rng, 1, 8));
  for (int i = 0; i < len; ++i) {
    if (uniform(rng, 0, 4) == 0)
      w.factors.push_back(comm(word({letter()}), word({letter()}), uniform(rng, -2, 2)));
    else
      w.factors.push_back(letter());
  }
  w.factors.push_back(var(vars[uniform(rng, 0, vars.size() - 1)], uniform(rng, 1, 2)));
  return w;
}

Verdict1 decision_soundness() {
  const auto h = heisenberg();
  SolverConfig cfg;
  Rng rng(2002);
  int sat = 0, unsat = 0, unknown = 0, bad_witness = 0, refuted = 0, bad_certificate = 0;
  for (int trial = 0; trial < 120; ++trial) {
    Equation e{random_heisenberg_equation(rng), {}};
    DecisionResult r = decide_equation(e, h, cfg);
    if (r.verdict == Verdict::Sat) {
      ++sat;
      if (!is_identity(evaluate_word(e.lhs, r.witness, h))) ++bad_witness;
    } else if (r.verdict == Verdict::Unsat) {
      ++unsat;
      if (bounded_search(e, h, 5, 100'000'000)) ++refuted;
      if (!verify_certificate(e, h, *r.certificate, cfg)) ++bad_certificate;
    } else {
      ++unknown;
    }
  }
  return {bad_witness == 0 && refuted == 0 && bad_certificate == 0,
          fmt::format("120 equations: {} sat, {} unsat, {} unknown; {} bad witnesses, {} unsat refuted by search, "
                      "{} certificates failing re-check",
                      sat, unsat, unknown, bad_witness, refuted, bad_certificate)};
}

// --- 3 ---------------------------------------------------------------------

Verdict1 named_instances() {
  const auto h = heisenberg();
  const SolverConfig cfg;
  std::vector<std::string> notes;
  bool pass = true;
  auto expect = [&](const std::string &text, Verdict want) {
    Equation e = eq(text, h);
    DecisionResult r = decide_equation(e, h, cfg);
    bool ok = r.verdict == want;
    if (r.verdict == Verdict::Sat) ok = ok && is_identity(evaluate_word(normalized(e), r.witness, h));
    if (r.verdict == Verdict::Unsat) ok = ok && verify_certificate(e, h, *r.certificate, cfg);
    pass = pass && ok;
    notes.push_back(fmt::format("{} -> {}", text, verdict_name(r.verdict)));
  };
  expect("[a1,x] = c", Verdict::Sat);
  expect("x^2 = a1", Verdict::Unsat);
  expect("[x,y] = c", Verdict::Sat);

  // Showcase equation with b read as a2.
  Equation showcase = eq("a1*x^2*y^-1*z^3*a1*a2*y*a2^10*y*z = 1", h);
  auto start = Clock::now();
  DecisionResult r = decide_equation(showcase, h, cfg);
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  bool ok = seconds < 60;
  std::string agreement = "no search needed";
  if (r.verdict == Verdict::Sat) {
    ok = ok && is_identity(evaluate_word(normalized(showcase), r.witness, h));
    auto found = bounded_search(showcase, h, 4, 500'000'000);
    ok = ok && found.has_value();
    agreement = found ? "search at bound 4 also finds a solution" : "search at bound 4 finds none";
  } else if (r.verdict == Verdict::Unsat) {
    ok = ok && verify_certificate(showcase, h, *r.certificate, cfg) && !bounded_search(showcase, h, 4, 500'000'000);
    agreement = "search at bound 4 checked";
  } else {
    agreement = fmt::format("unknown with bound {}", r.search_bound);
  }
  pass = pass && ok;
  notes.push_back(fmt::format("showcase -> {} in {:.2f}s ({})", verdict_name(r.verdict), seconds, agreement));
  std::string detail;
  for (const auto &n : notes) detail += (detail.empty() ? "" : "; ") + n;
  return {pass, detail};
}

// --- 4 ---------------------------------------------------------------------

IntPolynomial random_poly(Rng &rng, int m, bool quadratic) {
  IntPolynomial p(Integer(uniform(rng, -4, 4)));
  for (int v = 0; v < m; ++v) p += IntPolynomial::variable(v, uniform(rng, -4, 4));
  if (quadratic)
    for (int u = 0; u < m; ++u)
      for (int v = u; v < m; ++v)
        if (uniform(rng, 0, 2) == 0) {
          IntPolynomial t;
          t.add_term(Monomial::quadratic(u, v), uniform(rng, -4, 4));
          p += t;
        }
  return p;
}

bool exhaustive(const QuadraticSystem &s, int r) {
  std::vector<Integer> v(s.unknowns, Integer(-r));
  while (true) {
    if (satisfies(s, v)) return true;
    int i = s.unknowns - 1;
    while (i >= 0 && v[i] == r) v[i--] = -r;
    if (i < 0) return false;
    ++v[i];
  }
}

Verdict1 pipeline_equivalence() {
  Rng rng(4004);
  SolverConfig cfg;
  cfg.search_bound = 16;
  cfg.residue_budget = 1'000'000;
  const std::int64_t moduli[] = {2, 3, 4, 5, 6, 8};
  int sat = 0, unsat = 0, unknown = 0, disagreements = 0, outside = 0;
  for (int trial = 0; trial < 200; ++trial) {
    QuadraticSystem s;
    s.unknowns = static_cast<int>(uniform(rng, 1, 4));
    for (auto i = uniform(rng, 0, 3); i > 0; --i) s.linear.push_back(random_poly(rng, s.unknowns, false));
    for (auto i = uniform(rng, 0, 2); i > 0; --i)
      s.congruences.push_back({random_poly(rng, s.unknowns, true), moduli[uniform(rng, 0, 5)]});
    s.quadratic = random_poly(rng, s.unknowns, true);
    DecisionResult r = decide_system(s, cfg);
    if (r.verdict == Verdict::Unknown) {
      ++unknown;
      continue;
    }
    const bool in_box = exhaustive(s, 8);
    if (r.verdict == Verdict::Sat) {
      ++sat;
      if (!satisfies(s, r.integer_witness)) ++disagreements;
      else if (!in_box) ++outside;
    } else {
      ++unsat;
      if (in_box || !verify_system_certificate(s, *r.certificate, cfg)) ++disagreements;
    }
  }
  return {disagreements == 0,
          fmt::format("200 systems: {} sat, {} unsat, {} unknown; {} disagreements ({} sat witnesses lie outside "
                      "|y| <= 8 with no solution inside)",
                      sat, unsat, unknown, disagreements, outside)};
}

// --- 5 ---------------------------------------------------------------------

Verdict1 commutator_identities() {
  std::uint64_t checks = 0, failures = 0, transcription_holds = 0;
  for (FreeNilpotentSpec spec : {FreeNilpotentSpec{3, 2}, FreeNilpotentSpec{3, 3}, FreeNilpotentSpec{4, 2}}) {
    Rng rng(5005 + spec.step * 10 + spec.rank);
    const int k = spec.step;
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<TruncatedFreePoly> r;
      for (int i = 0; i < k + 2; ++i) r.push_back(random_element(rng, spec, 6));
      const auto &x = r[0], &y = r[1], &z = r[2];
      auto K = commutator_right;
      auto check = [&](bool ok) {
        ++checks;
        failures += !ok;
      };
      // The two expansions as printed; they hold for [x,y] = x y x^-1 y^-1.
      check(K(x, y * z) == K(x, y) * K(y, K(x, z)) * K(x, z));
      check(K(x * y, z) == K(x, K(y, z)) * K(y, z) * K(x, z));
      transcription_holds += commutator(x, y * z) == commutator(x, y) * commutator(y, commutator(x, z)) * commutator(x, z);
      // Linearity in the last and second-to-last arguments of a k-fold commutator.
      const auto &s = r[k], &t = r[k + 1];
      std::vector<TruncatedFreePoly> head(r.begin(), r.begin() + k - 1);
      auto last = [&](const TruncatedFreePoly &v) {
        auto a = head;
        a.push_back(v);
        return nested(a);
      };
      check(last(s * t) == last(s) * last(t));
      std::vector<TruncatedFreePoly> head2(r.begin(), r.begin() + k - 2);
      auto second_last = [&](const TruncatedFreePoly &v) {
        auto a = head2;
        a.push_back(v);
        a.push_back(r[k - 1]);
        return nested(a);
      };
      check(second_last(s * t) == second_last(s) * second_last(t));
      // (k+1)-fold commutators vanish.
      std::vector<TruncatedFreePoly> long_one(r.begin(), r.begin() + k + 1);
      check(nested(long_one).is_one());
    }
  }
  return {failures == 0, fmt::format("{} identity checks in N(3,2), N(3,3), N(4,2), {} failures; expansion (1) "
                                     "read with [x,y] = x^-1 y^-1 x y holds on only {}/3000 samples",
                                     checks, failures, transcription_holds)};
}

// --- 6 ---------------------------------------------------------------------

Verdict1 encoding_round_trips() {
  Rng rng(6006);
  const Alphabet alpha{2, 0, 0, true};
  int systems = 0, failures = 0;
  while (systems < 60) {
    DiophSystem s;
    s.variables = static_cast<int>(uniform(rng, 1, 2));
    for (auto i = uniform(rng, 1, 2); i > 0; --i) {
      DiophEquation e;
      e.alpha = uniform(rng, -5, 5);
      for (int j = 0; j < s.variables; ++j) e.beta.emplace_back(uniform(rng, -5, 5));
      e.gamma.assign(s.variables, std::vector<Integer>(s.variables, 0));
      for (auto &row : e.gamma)
        for (auto &g : row)
          if (uniform(rng, 0, 1)) g = uniform(rng, -5, 5);
      s.equations.push_back(std::move(e));
    }
    std::optional<std::vector<Integer>> x;
    std::vector<Integer> probe(s.variables, Integer(-10));
    while (!x) {
      if (s.solved_by(probe)) x = probe;
      int i = s.variables - 1;
      while (i >= 0 && probe[i] == 10) probe[i--] = -10;
      if (i < 0) break;
      ++probe[i];
    }
    if (!x) continue;
    ++systems;
    auto holds = [&](const EquationSystem &sys, const std::map<std::string, Word> &values, FreeNilpotentSpec spec) {
      MagnusAssignment a = magnus_assignment(values, spec);
      for (const auto &e : sys.equations)
        if (!magnus_holds(e, a, spec)) return false;
      return true;
    };
    auto two = lift_solution(*x, EncodingTarget::TwoStep);
    bool ok = holds(encode_two_step(s, 2), two, {2, 2}) && holds(encode_two_step(s, 3), two, {2, 3}) &&
              holds(encode_higher_step(s, {3, 2}), lift_solution(*x, EncodingTarget::HigherStep), {3, 2});
    // Perturb every lifted value by a central element and project back.
    std::map<std::string, Word> perturbed = two;
    for (auto &[name, w] : perturbed) {
      Word c = parse_word("c^" + std::to_string(uniform(rng, -5, 5)), alpha);
      w.factors.insert(w.factors.end(), c.factors.begin(), c.factors.end());
    }
    ok = ok && holds(encode_two_step(s, 2), perturbed, {2, 2});
    try {
      ok = ok && project_solution(perturbed, s, 2) == *x;
    } catch (const std::exception &) {
      ok = false;
    }
    failures += !ok;
  }
  return {failures == 0, fmt::format("{} solvable systems through N(2,2), N(2,3), N(3,2); {} failures", systems,
                                     failures)};
}

// --- 7 ---------------------------------------------------------------------

Verdict1 magnus_malcev() {
  const auto h = heisenberg();
  Rng rng(7007);
  int words = 0, disagreements = 0, identities = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    Word u = word_of(random_letters(rng, h, 8));
    if (uniform(rng, 0, 1)) {
      Word back = inverse_word(normal_form_word(evaluate_word(u, h), h));
      u.factors.insert(u.factors.end(), back.factors.begin(), back.factors.end());
      if (uniform(rng, 0, 2) == 0) u.factors.push_back(gen(GenKind::A, 1, uniform(rng, -1, 1)));
    }
    ++words;
    const bool malcev = is_identity(evaluate_word(u, h));
    identities += malcev;
    disagreements += magnus_is_identity(u, {}, {2, 2}) != malcev;
  }
  return {disagreements == 0,
          fmt::format("{} words ({} trivial), {} disagreements", words, identities, disagreements)};
}

} // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict1()>>> criteria = {
      {"multiplication law vs rewriting oracle", multiplication_law},
      {"decision soundness and oracle agreement", decision_soundness},
      {"named instances", named_instances},
      {"lemma pipeline equivalence", pipeline_equivalence},
      {"commutator identities", commutator_identities},
      {"encoding round trips", encoding_round_trips},
      {"Magnus/Mal'cev cross-validation", magnus_malcev},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = Clock::now();
    Verdict1 v;
    try {
      v = criteria[i].second();
    } catch (const std::exception &e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    fmt::print("{} {}. {}: {} [{:.1f}s]\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail, seconds);
    std::fflush(stdout);
    failed += !v.pass;
  }
  return failed == 0 ? 0 : 1;
}
