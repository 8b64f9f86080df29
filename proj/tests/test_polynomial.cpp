#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace separative;
using testutil::Rng;

namespace {
RationalField Q;
Polynomial<RationalField> P(const std::string &s) { return parse_polynomial(Q, s); }
} // namespace

TEST_CASE("scalar arithmetic is exact against a cross-multiplication oracle") {
  Rng rng(101);
  for (int t = 0; t < 10000; ++t) {
    Rational a = testutil::random_rational(rng);
    Rational b = testutil::random_rational(rng);
    Rational sum = a + b;
    // oracle: integer cross multiplication
    BigInt n = numerator(a) * denominator(b) + numerator(b) * denominator(a);
    BigInt d = denominator(a) * denominator(b);
    CHECK(sum * d == n);
  }
}

TEST_CASE("prime field arithmetic") {
  PrimeField F7(7);
  CHECK(F7.from_integer(10) == F7.from_integer(3));
  CHECK((F7.from_integer(3) * F7.from_integer(5)) == F7.from_integer(1));
  CHECK(F7.from_integer(3).inverse() == F7.from_integer(5));
  CHECK_THROWS_AS(PrimeField(6), std::invalid_argument);
  CHECK_THROWS_AS(F7.zero().inverse(), DomainError);
}

TEST_CASE("product of single monomials is the bracketed product") {
  auto f = P("x1") * P("x2");
  REQUIRE(f.term_count() == 1);
  CHECK(f.coeff(parse_monomial("(x1 x2)")) == 1);

  auto g = (P("x1") + P("x2")) * P("x3");
  CHECK(g == P("(x1 x3) + (x2 x3)"));

  auto pp = P("p") * P("p");
  CHECK(pp == P("(p p)"));
}

TEST_CASE("field mismatch is rejected") {
  PrimeField F5(5);
  auto f = parse_polynomial(F5, "x1");
  auto g = parse_polynomial(F5, "x2");
  CHECK_NOTHROW(f + g);
  PrimeField F7(7);
  auto h = parse_polynomial(F7, "x2");
  CHECK_THROWS_AS(f + h, std::invalid_argument);
}

TEST_CASE("substitution") {
  // identity substitution
  std::map<Indeterminate, Polynomial<RationalField>> idsub{
      {Indeterminate::named("x"), P("x")}};
  CHECK(substitute(P("x"), idsub) == P("x"));

  // single monomial images compose structurally
  std::map<Indeterminate, Polynomial<RationalField>> msub{
      {Indeterminate::var(1), P("(w1 w1)")},
      {Indeterminate::var(2), P("w2")},
      {Indeterminate::var(3), P("(w3 w1)")}};
  CHECK(substitute(P("((x1 x2) x3)"), msub) == P("(((w1 w1) w2) (w3 w1))"));

  // unassigned variable
  CHECK_THROWS_AS(substitute(P("(x1 x9)"), msub), std::invalid_argument);

  // the Jordan-style expansion has 3^3 = 27 leaf choices on (x y0)(x x)
  std::map<Indeterminate, Polynomial<RationalField>> s{
      {Indeterminate::named("x"), P("x2 + x3 + z")},
      {Indeterminate::named("y0"), P("x1")}};
  auto lhs = substitute(P("((x y0) (x x))"), s);
  CHECK(lhs.term_count() == 27);
}

TEST_CASE("substitution respects multiplication") {
  Rng rng(103);
  auto vars = testutil::xvars(3);
  for (int t = 0; t < 40; ++t) {
    auto f = testutil::random_polynomial(rng, vars, 3, 3);
    auto g = testutil::random_polynomial(rng, vars, 3, 3);
    std::map<Indeterminate, Polynomial<RationalField>> sigma;
    for (auto v : vars) sigma.emplace(v, testutil::random_polynomial(rng, vars, 2, 2));
    CHECK(substitute(f * g, sigma) == substitute(f, sigma) * substitute(g, sigma));
  }
}

TEST_CASE("bilinearity and distributivity hold; associativity is absent") {
  Rng rng(107);
  auto vars = testutil::xvars(2);
  for (int t = 0; t < 40; ++t) {
    auto f = testutil::random_polynomial(rng, vars, 3, 3);
    auto g = testutil::random_polynomial(rng, vars, 3, 3);
    auto h = testutil::random_polynomial(rng, vars, 3, 3);
    CHECK((f + g) * h == f * h + g * h);
    CHECK(h * (f + g) == h * f + h * g);
    Rational c = testutil::random_rational(rng);
    CHECK((c * f) * g == c * (f * g));
  }
  CHECK(P("((x1 x2) x3)") != P("(x1 (x2 x3))"));
  CHECK(P("(x1 x2)") != P("(x2 x1)"));
}

TEST_CASE("multidegree components") {
  auto f = P("(x1 x2) + ((x1 x1) x2)");
  auto comps = multidegree_components(f);
  REQUIRE(comps.size() == 2);
  Multidegree d1, d2;
  d1.set(Indeterminate::var(1), 1);
  d1.set(Indeterminate::var(2), 1);
  d2.set(Indeterminate::var(1), 2);
  d2.set(Indeterminate::var(2), 1);
  CHECK(comps.count(d1) == 1);
  CHECK(comps.count(d2) == 1);

  CHECK(multidegree_components(Polynomial<RationalField>(Q)).empty());

  // components sum back to the input
  Rng rng(109);
  for (int t = 0; t < 30; ++t) {
    auto g = testutil::random_polynomial(rng, testutil::xvars(3), 4, 5);
    Polynomial<RationalField> sum(Q);
    for (auto &[d, comp] : multidegree_components(g)) {
      sum += comp;
      CHECK(is_multihomogeneous(comp));
    }
    CHECK(sum == g);
  }
}

TEST_CASE("multilinear part") {
  Indeterminate x = Indeterminate::named("x"), y0 = Indeterminate::named("y0");
  CHECK(multilinear_part(P("(x (y0 x))"), {x, y0}).is_zero());

  auto f = P("(x1 x2) + (x2 x1)");
  CHECK(multilinear_part(f, {Indeterminate::var(1), Indeterminate::var(2)}) == f);

  // idempotence
  Rng rng(113);
  std::set<Indeterminate> vs{Indeterminate::var(1), Indeterminate::var(2),
                             Indeterminate::var(3)};
  for (int t = 0; t < 30; ++t) {
    auto g = testutil::random_polynomial(rng, testutil::xvars(3), 4, 6);
    auto m = multilinear_part(g, vs);
    CHECK(multilinear_part(m, vs) == m);
  }

  // the Jordan expansion: multilinear part folded up to commutativity has
  // every coefficient +-2
  std::map<Indeterminate, Polynomial<RationalField>> s{
      {x, P("x2 + x3 + z")}, {y0, P("x1")}};
  auto lhs = substitute(P("((x y0) (x x))"), s);
  std::set<Indeterminate> four{Indeterminate::var(1), Indeterminate::var(2),
                               Indeterminate::var(3), Indeterminate::named("z")};
  auto folded = comm_canonical(multilinear_part(lhs, four));
  REQUIRE(folded.term_count() == 3);
  for (auto &[w, c] : folded.terms()) CHECK(c == 2);
}

TEST_CASE("polynomial text format round trips") {
  auto f = P("1/2 * ((x1 x2) x3) - (x3 (x2 x1))");
  CHECK(f.coeff(parse_monomial("((x1 x2) x3)")) == Rational(1, 2));
  CHECK(f.coeff(parse_monomial("(x3 (x2 x1))")) == -1);
  CHECK(parse_polynomial(Q, to_string(f)) == f);

  CHECK(to_string(Polynomial<RationalField>(Q)) == "0");
  CHECK(parse_polynomial(Q, "0").is_zero());

  Rng rng(127);
  for (int t = 0; t < 60; ++t) {
    auto g = testutil::random_polynomial(rng, testutil::xvars(3), 4, 4);
    CHECK(parse_polynomial(Q, to_string(g)) == g);
  }

  PrimeField F5(5);
  auto h = parse_polynomial(F5, "3 * (x1 x2) + 4 * x1");
  CHECK(parse_polynomial(F5, to_string(h)) == h);
  CHECK(parse_polynomial(F5, "1/2 * x1") == parse_polynomial(F5, "3 * x1"));

  CHECK_THROWS_AS(parse_polynomial(Q, "x1 +"), ParseError);
  CHECK_THROWS_AS(parse_polynomial(Q, "* x1"), ParseError);
}

TEST_CASE("polarization closure") {
  // x*x polarizes to the symmetric bilinear form
  auto sq = P("(x1 x1)");
  auto closure = polarization_closure(sq);
  REQUIRE(closure.size() == 2);
  bool found_bilinear = false;
  for (auto &g : closure) {
    if (g.term_count() == 2) {
      auto vars = g.variables();
      REQUIRE(vars.size() == 2);
      auto it = vars.begin();
      Indeterminate a = *it++, b = *it;
      Polynomial<RationalField> expected(Q, Monomial(Monomial(a), Monomial(b)));
      expected.add_term(Monomial(Monomial(b), Monomial(a)), Rational(1));
      found_bilinear = g == expected;
    }
  }
  CHECK(found_bilinear);

  // multilinear polynomials are their own closure
  auto lin = P("((x1 x2) x3) - (x1 (x2 x3))");
  CHECK(polarization_closure(lin).size() == 1);

  CHECK_THROWS_AS(polarization_closure(P("x1 + (x1 x1)")), std::invalid_argument);
}

TEST_CASE("monomials_of_multidegree") {
  Multidegree d;
  d.set(Indeterminate::var(1), 1);
  d.set(Indeterminate::var(2), 1);
  d.set(Indeterminate::var(3), 1);
  // 3 letters: 2 bracketings x 6 orders
  CHECK(monomials_of_multidegree(d).size() == 12);
  // with a placeholder: 4 letters, 5 bracketings x arrangements 4!/1 = 24...
  // total C_3 * 4! / (multiset) = 5 * 24 = 120 over 4 distinct letters
  CHECK(monomials_of_multidegree(d, true).size() == 120);

  Multidegree sq;
  sq.set(Indeterminate::var(1), 2);
  CHECK(monomials_of_multidegree(sq).size() == 1); // (x1 x1)
}
