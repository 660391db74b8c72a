#include "support.hpp"

#include "neq/search.hpp"

#include <doctest.h>

using namespace neq;
using namespace neq::testing;

namespace {

const FreeNilpotentSpec N22{2, 2}, N32{3, 2}, N33{3, 3}, N42{4, 2}, N43{4, 3};

TruncatedFreePoly magnus(const std::string &text, FreeNilpotentSpec spec) {
  Alphabet alpha{spec.rank, 0, 0, true};
  return magnus_eval_word(parse_word(text, alpha), spec);
}

std::vector<TruncatedFreePoly> sample(Rng &rng, FreeNilpotentSpec spec, int count) {
  std::vector<TruncatedFreePoly> out;
  for (int i = 0; i < count; ++i) out.push_back(random_element(rng, spec, 6));
  return out;
}

} // namespace

TEST_CASE("Magnus expansion examples") {
  TruncatedFreePoly c = magnus("[a1,a2]", N22);
  CHECK(c.coefficient({}) == 1);
  CHECK(c.coefficient({0}) == 0);
  CHECK(c.coefficient({1}) == 0);
  CHECK(c.coefficient({0, 0}) == 0);
  CHECK(c.coefficient({0, 1}) == 1);
  CHECK(c.coefficient({1, 0}) == -1);
  CHECK(c.coefficient({1, 1}) == 0);
  CHECK(magnus("a1*a1^-1", N22).is_one());
  CHECK(magnus("[[a1,a2],a1]", N22).is_one());
  CHECK_FALSE(magnus("[[a1,a2],a1]", N32).is_one());
  CHECK(magnus("c", N32) == magnus("[a1,a2]", N32));

  // (1 + X1)^3 truncated at degree 3.
  TruncatedFreePoly cube = magnus("a1^3", N32);
  CHECK(cube.coefficient({0}) == 3);
  CHECK(cube.coefficient({0, 0}) == 3);
  CHECK(cube.coefficient({0, 0, 0}) == 1);
  // (1 + X1)^-1 = 1 - X1 + X1^2 - X1^3.
  TruncatedFreePoly inv = magnus("a1^-1", N32);
  CHECK(inv.coefficient({0, 0, 0}) == -1);
  CHECK(inv * TruncatedFreePoly::generator(N32, 1) == TruncatedFreePoly(N32));
}

TEST_CASE("Magnus evaluation rejects unsupported input") {
  Alphabet alpha{2, 1, 1, true};
  CHECK_THROWS_AS(magnus_eval_word(parse_word("b1", alpha), N22), std::invalid_argument);
  CHECK_THROWS_AS(magnus_eval_word(parse_word("x", alpha), N22), UnassignedVariable);
  CHECK_THROWS(FreeNilpotentSpec{1, 2}.validate());
  CHECK_THROWS(FreeNilpotentSpec{2, 1}.validate());
  CHECK_THROWS(magnus("a3", N22));
}

TEST_CASE("power agrees with repeated multiplication") {
  Rng rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    auto x = random_element(rng, N33, 5);
    const auto k = uniform(rng, -5, 5);
    TruncatedFreePoly expected(N33);
    for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) expected = expected * (k < 0 ? x.inverse() : x);
    REQUIRE(x.power(k) == expected);
  }
}

TEST_CASE("expansion identities hold for random triples") {
  for (auto spec : {N32, N42}) {
    Rng rng(52);
    for (int trial = 0; trial < 1000; ++trial) {
      auto r = sample(rng, spec, 3);
      const auto &x = r[0], &y = r[1], &z = r[2];
      auto K = commutator_right;
      REQUIRE(K(x, y * z) == K(x, y) * K(y, K(x, z)) * K(x, z));
      REQUIRE(K(x * y, z) == K(x, K(y, z)) * K(y, z) * K(x, z));
      // The same expansions in the x^-1 y^-1 x y convention.
      REQUIRE(commutator(x, y * z) == commutator(x, z) * commutator(x, y) * commutator(commutator(x, y), z));
      REQUIRE(commutator(x * y, z) == commutator(x, z) * commutator(commutator(x, z), y) * commutator(y, z));
    }
  }
}

TEST_CASE("commutator linearity in the last two arguments") {
  for (auto spec : {N32, N33, N42, N43}) {
    const int k = spec.step;
    Rng rng(53);
    for (int trial = 0; trial < 150; ++trial) {
      auto r = sample(rng, spec, k + 1);
      auto s = r[k - 1], t = r[k];
      std::vector<TruncatedFreePoly> args(r.begin(), r.begin() + k - 1);
      auto with_last = [&](const TruncatedFreePoly &v) {
        auto a = args;
        a.push_back(v);
        return nested(a);
      };
      REQUIRE(with_last(s * t) == with_last(s) * with_last(t));

      std::vector<TruncatedFreePoly> head(r.begin(), r.begin() + k - 2);
      const auto &last = r[0];
      auto with_second_last = [&](const TruncatedFreePoly &v) {
        auto a = head;
        a.push_back(v);
        a.push_back(last);
        return nested(a);
      };
      REQUIRE(with_second_last(s * t) == with_second_last(s) * with_second_last(t));
    }
  }
}

TEST_CASE("linearity instance with central perturbations") {
  Rng rng(54);
  Alphabet alpha{2, 0, 0, true};
  Equation e = parse_equation("[a1,a2,x*y] = [a1,a2,x]*[a1,a2,y]", alpha);
  for (int trial = 0; trial < 50; ++trial) {
    std::map<std::string, Word> values;
    values["x"] = parse_word("a2*[a1,a2,a2]^" + std::to_string(uniform(rng, -4, 4)), alpha);
    values["y"] = parse_word("a1*[a1,a2,a1]^" + std::to_string(uniform(rng, -4, 4)), alpha);
    REQUIRE(magnus_holds(e, magnus_assignment(values, N32), N32));
  }
}

TEST_CASE("nested commutators one step too long vanish") {
  for (auto spec : {N22, N32, N33, N42}) {
    Rng rng(55);
    int nontrivial = 0;
    for (int trial = 0; trial < 100; ++trial) {
      auto r = sample(rng, spec, spec.step + 1);
      REQUIRE(nested(r).is_one());
      r.pop_back();
      nontrivial += !nested(r).is_one();
    }
    CHECK(nontrivial > 50);
  }
}

TEST_CASE("Magnus and Mal'cev agree on Heisenberg words") {
  const auto h = heisenberg();
  Rng rng(56);
  int identities = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Word u = word_of(random_letters(rng, h, 8));
    // Half the time append the inverse normal form so that the word is trivial,
    // then perturb it with a commutator or a single letter.
    if (uniform(rng, 0, 1)) {
      Word back = inverse_word(normal_form_word(evaluate_word(u, h), h));
      u.factors.insert(u.factors.end(), back.factors.begin(), back.factors.end());
      if (uniform(rng, 0, 2) == 0) u.factors.push_back(gen(GenKind::C, 1, uniform(rng, -1, 1)));
    }
    const bool malcev = is_identity(evaluate_word(u, h));
    REQUIRE(magnus_is_identity(u, {}, N22) == malcev);
    identities += malcev;
  }
  CHECK(identities > 300);
}

TEST_CASE("bounded_search examples") {
  const auto h = heisenberg();
  auto a = bounded_search(eq("[a1,x] = c", h), h, 2);
  REQUIRE(a);
  CHECK(a->at("x") == coord({0, 1}, 0));
  CHECK_FALSE(bounded_search(eq("x^2 = a1", h), h, 5));
  auto b = bounded_search(eq("x = 1", h), h, 1);
  REQUIRE(b);
  CHECK(is_identity(b->at("x")));
  CHECK_THROWS_AS(bounded_search(eq("[x,y] = c^7", h), h, 5, 1000), SearchBudgetExceeded);
}

TEST_CASE("bounded_search over systems and torsion") {
  const auto h = heisenberg();
  EquationSystem s = parse_system("[x,y] = c\nx*a1^-1 = 1\n", h.alphabet());
  auto r = bounded_search(s, h, 2);
  REQUIRE(r);
  for (const auto &e : s.equations) CHECK(is_identity(evaluate_word(normalized(e), *r, h)));
  CHECK(r->at("x") == coord({1, 0}, 0));

  const auto p = torsion_small();
  auto t = bounded_search(eq("x^2 = c", p), p, 1);
  REQUIRE(t);
  CHECK(is_identity(evaluate_word(normalized(eq("x^2 = c", p)), *t, p)));
  CHECK(t->at("x").B[0] == 1);
}

TEST_CASE("bounded_search visits shells in order") {
  const auto h = heisenberg();
  // x.C = -2 is first reached in shell 2, after (0,0,2).
  auto r = bounded_search(eq("x^2 = c^4", h), h, 3);
  REQUIRE(r);
  CHECK(r->at("x") == coord({0, 0}, 2));
  auto s = bounded_search(eq("x^2 = c^-4", h), h, 3);
  REQUIRE(s);
  CHECK(s->at("x") == coord({0, 0}, -2));
}
