#include "support.hpp"

#include <doctest.h>

using namespace neq;
using namespace neq::testing;

namespace {

const Alphabet kAlpha{2, 2, 1, true};

Word random_ast(Rng &rng, int depth) {
  Word w;
  const int len = static_cast<int>(uniform(rng, depth == 0 ? 1 : 0, 4));
  auto exponent = [&]() -> std::int64_t {
    switch (uniform(rng, 0, 5)) {
    case 0: return std::numeric_limits<std::int64_t>::min();
    case 1: return std::numeric_limits<std::int64_t>::max();
    default: return uniform(rng, -12, 12);
    }
  };
  for (int i = 0; i < len; ++i) {
    const auto pick = uniform(rng, 0, depth >= 3 ? 2 : 4);
    switch (pick) {
    case 0: {
      const auto k = uniform(rng, 0, 3);
      GenKind kind = k == 0 ? GenKind::A : k == 1 ? GenKind::B : k == 2 ? GenKind::C : GenKind::D;
      int index = kind == GenKind::A || kind == GenKind::B ? static_cast<int>(uniform(rng, 1, 2)) : 1;
      w.factors.push_back(gen(kind, index, exponent()));
      break;
    }
    case 1:
    case 2: {
      static const char *names[] = {"x", "y", "z3", "long_name", "q"};
      w.factors.push_back(var(names[uniform(rng, 0, 4)], exponent()));
      break;
    }
    case 3: w.factors.push_back(comm(random_ast(rng, depth + 1), random_ast(rng, depth + 1), exponent())); break;
    default: w.factors.push_back(group(random_ast(rng, depth + 1), exponent())); break;
    }
  }
  return w;
}

} // namespace

TEST_CASE("parse_word literal concatenation") {
  Word w = parse_word("a1*b1", kAlpha);
  CHECK(w == word({gen(GenKind::A, 1), gen(GenKind::B, 1)}));
}

TEST_CASE("parse_word commutator power and central inverse") {
  Word w = parse_word("[a1,x]^2 * c^-1", kAlpha);
  Word expected = word({comm(word({gen(GenKind::A, 1)}), word({var("x")}), 2), gen(GenKind::C, 1, -1)});
  CHECK(w == expected);
}

TEST_CASE("showcase word has ten factors") {
  Word w = parse_word("a1*x^2*y^-1*z^3*a1*b1*y*b1^10*y*z", kAlpha);
  CHECK(w.factors.size() == 10);
  CHECK(collect_variables(w) == std::vector<std::string>{"x", "y", "z"});
}

TEST_CASE("left-normed brackets and identity word") {
  Word w = parse_word("[a1,a2,x]", kAlpha);
  Word inner = word({comm(word({gen(GenKind::A, 1)}), word({gen(GenKind::A, 2)}))});
  CHECK(w == word({comm(inner, word({var("x")}))}));
  CHECK(parse_word("1", kAlpha).empty());
  Equation e = parse_equation("x*y = 1", kAlpha);
  CHECK(e.rhs.empty());
  CHECK(parse_equation("[x,y]", kAlpha).rhs.empty());
}

TEST_CASE("parse errors carry positions") {
  auto position_of = [](const std::string &text) -> std::size_t {
    try {
      parse_word(text, kAlpha);
    } catch (const ParseError &e) {
      return e.position();
    }
    FAIL("expected a parse error for " << text);
    return 0;
  };
  CHECK(position_of("a1*") == 3);
  CHECK(position_of("a3") == 0);   // a-index beyond the alphabet
  CHECK(position_of("a1 ** a2") == 4);
  CHECK(position_of("[a1,x") == 5);
  CHECK_THROWS_AS(parse_word("d2", kAlpha), ParseError);
  CHECK_THROWS_AS(parse_word("a0", kAlpha), ParseError);
  CHECK_THROWS_AS(parse_word("x^99999999999999999999", kAlpha), ParseError);
  ParseOptions opts;
  opts.variables = std::vector<std::string>{"x"};
  CHECK_NOTHROW(parse_word("x*a1", kAlpha, opts));
  CHECK_THROWS_AS(parse_word("y", kAlpha, opts), ParseError);
}

TEST_CASE("format then parse is the identity on random ASTs") {
  Rng rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    Word w = random_ast(rng, 0);
    std::string text = format_word(w);
    Word back = parse_word(text, kAlpha);
    REQUIRE_MESSAGE(back == w, text);
  }
}

TEST_CASE("parser is total on fuzzed input") {
  Rng rng(12);
  const std::string alphabet = "abcdxyz0123456789*^-+[](),= \t_1";
  for (int trial = 0; trial < 400; ++trial) {
    std::string s;
    const auto len = uniform(rng, 0, trial < 390 ? 60 : 10000);
    for (std::int64_t i = 0; i < len; ++i) s += alphabet[uniform(rng, 0, alphabet.size() - 1)];
    try {
      parse_equation(s, kAlpha);
    } catch (const ParseError &) {
    }
  }
  std::string deep(5000, '(');
  CHECK_THROWS_AS(parse_word(deep, kAlpha), ParseError);
}

TEST_CASE("parse_system and parse_assignment") {
  EquationSystem s = parse_system("vars: x, y\n# comment\n[x,y] = c\n\nx*a1 = 1  # trailing\n", kAlpha);
  CHECK(s.variables == std::vector<std::string>{"x", "y"});
  CHECK(s.equations.size() == 2);
  CHECK_THROWS_AS(parse_system("x = 1\nvars: x\n", kAlpha), ParseError);
  auto a = parse_assignment("x = a1^2\ny = 1\n", kAlpha);
  CHECK(a.at("x") == word({gen(GenKind::A, 1, 2)}));
  CHECK(a.at("y").empty());
  CHECK_THROWS_AS(parse_assignment("x = y\n", kAlpha), ParseError);
}

TEST_CASE("presentation text schema") {
  MalcevPresentation h = parse_presentation("n = 2\n[a1,a2] = c\n");
  CHECK(h.a_count() == 2);
  CHECK(h.commutator(0, 1).c == 1);
  CHECK(validate_presentation(h).ok());

  MalcevPresentation t = parse_presentation("n = 1\nl = 2\nb1^2 = c^0\n");
  CHECK(t.b_count() == 1);
  CHECK(t.power(0).c == 0);

  // A missing commutator entry defaults to the identity.
  MalcevPresentation m = parse_presentation("n = 3\n[a1,a2] = c\n");
  CHECK(m.commutator(0, 2).c == 0);
  CHECK(m.commutator(1, 2).c == 0);

  // Reversed pairs are stored negated.
  CHECK(parse_presentation("n = 2\n[a2,a1] = c\n").commutator(0, 1).c == -1);

  CHECK_THROWS_AS(parse_presentation("n = 2\n[a1,a2] = c\n[a1,a2] = c^2\n"), SchemaError);
  CHECK_THROWS_AS(parse_presentation("n = 1\nl = 0\n"), SchemaError);
  CHECK_FALSE(validate_presentation(parse_presentation("n = 1\nl = 1\n")).ok());
  CHECK_THROWS_AS(parse_presentation("n = 1\nl = 2\nb1^3 = c\n"), SchemaError);
}

TEST_CASE("presentation formats round trip") {
  MalcevPresentation p = torsion_mixed();
  for (const std::string &text : {format_presentation_text(p), format_presentation_json(p)}) {
    MalcevPresentation q = parse_presentation(text);
    REQUIRE(q.a_count() == p.a_count());
    REQUIRE(q.b_orders() == p.b_orders());
    REQUIRE(q.d_orders() == p.d_orders());
    for (int u = 0; u < p.x_count(); ++u)
      for (int v = u + 1; v < p.x_count(); ++v) CHECK(q.commutator(u, v) == p.commutator(u, v));
    for (int i = 0; i < p.b_count(); ++i) CHECK(q.power(i) == p.power(i));
  }
  CHECK_THROWS_AS(parse_presentation(R"({"n": 2, "bogus": 1})"), SchemaError);
}
