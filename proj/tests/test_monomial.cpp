#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace separative;
using testutil::Rng;

TEST_CASE("length counts letters, ignoring parentheses") {
  CHECK(parse_monomial("((x y0) z)").length() == 3);
  CHECK(parse_monomial("x").length() == 1);
  CHECK(parse_monomial("(((x1 x2) (x3 x4)) ((x5 x6) (x7 x8)))").length() == 8);
}

TEST_CASE("submonomial occurrences follow the recursive factorization") {
  Monomial w = parse_monomial("((x y0) z)");
  auto occ = submonomial_occurrences(w);
  REQUIRE(occ.size() == 5); // 2*3 - 1
  CHECK(occ.front().sub == w);
  bool has_xy = false, has_yz = false;
  for (auto &o : occ) {
    if (o.sub == parse_monomial("(x y0)")) has_xy = true;
    if (o.sub == parse_monomial("(y0 z)")) has_yz = true;
  }
  CHECK(has_xy);
  CHECK_FALSE(has_yz);

  auto single = submonomial_occurrences(parse_monomial("x"));
  REQUIRE(single.size() == 1);
  CHECK(single[0].sub == parse_monomial("x"));
  CHECK(single[0].path.empty());

  Monomial big = parse_monomial("(((x1 x2) (x3 x4)) ((x5 x6) (x7 x8)))");
  CHECK(submonomial_length_set(big) == std::set<unsigned>{1, 2, 4, 8});
}

TEST_CASE("m-separating predicate") {
  Monomial w9 = parse_monomial("((((x1 x2) (x3 x4)) ((x5 x6) (x7 x8))) x9)");
  CHECK(is_m_separating(w9, 1));

  Monomial w8 = parse_monomial("(((x1 x2) (x3 x4)) ((x5 x6) (x7 x8)))");
  std::set<unsigned> profile;
  for (unsigned m = 0; m < w8.length(); ++m)
    if (is_m_separating(w8, m)) profile.insert(m);
  CHECK(profile == std::set<unsigned>{0, 4, 6, 7});

  // m = 0 always holds
  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    Monomial w = testutil::random_monomial(rng, testutil::xvars(3), 1 + testutil::pick(rng, 7));
    CHECK(is_m_separating(w, 0));
    CHECK(is_m_separating(w, w.length() - 1));
  }
}

TEST_CASE("range separation") {
  Monomial w8 = parse_monomial("(((x1 x2) (x3 x4)) ((x5 x6) (x7 x8)))");
  CHECK_FALSE(is_range_separating(w8, 1, 3));
  Monomial w9 = parse_monomial("((((x1 x2) (x3 x4)) ((x5 x6) (x7 x8))) x9)");
  CHECK(is_range_separating(w9, 1, 3));
  CHECK_FALSE(is_range_separating(parse_monomial("x"), 1, 5));
  CHECK_THROWS_AS(is_range_separating(w8, 3, 1), std::invalid_argument);
}

TEST_CASE("predicate agrees with occurrence enumeration on small monomials") {
  auto vars = testutil::xvars(3);
  for (unsigned L = 1; L <= 6; ++L) {
    for_each_monomial(vars, L, [&](const Monomial &w) {
      auto lengths = submonomial_length_set(w);
      for (unsigned m = 0; m < L; ++m)
        REQUIRE(is_m_separating(w, m) == (lengths.count(L - m) > 0));
    });
  }
}

TEST_CASE("split_into_factors") {
  Monomial w = parse_monomial("((x1 x2) x3)");
  auto f2 = split_into_factors(w, 2);
  REQUIRE(f2.factors.size() == 2);
  CHECK(f2.factors[0] == parse_monomial("(x1 x2)"));
  CHECK(f2.factors[1] == parse_monomial("x3"));
  CHECK(f2.shape == parse_monomial("(s1 s2)"));

  auto f3 = split_into_factors(w, 3);
  REQUIRE(f3.factors.size() == 3);
  CHECK(f3.shape == parse_monomial("((s1 s2) s3)"));
  CHECK(f3.factors[0] == parse_monomial("x1"));

  auto f1 = split_into_factors(parse_monomial("x"), 1);
  CHECK(f1.shape == parse_monomial("s1"));
  CHECK(f1.factors[0] == parse_monomial("x"));

  CHECK_THROWS_AS(split_into_factors(w, 4), std::invalid_argument);

  // recombination reproduces w exactly for every m
  Rng rng(11);
  for (int t = 0; t < 40; ++t) {
    Monomial r = testutil::random_monomial(rng, testutil::xvars(2), 2 + testutil::pick(rng, 6));
    for (unsigned m = 1; m <= r.length(); ++m) {
      auto fac = split_into_factors(r, m);
      std::map<Indeterminate, Monomial> sub;
      for (unsigned i = 0; i < m; ++i) sub.emplace(slot_var(i + 1), fac.factors[i]);
      CHECK(substitute_leaves(fac.shape, sub) == r);
    }
  }
}

TEST_CASE("contexts") {
  Monomial w = parse_monomial("((x1 x2) x3)");
  auto c2 = contexts(w, 2);
  REQUIRE(c2.size() == 1);
  CHECK(c2[0].frame == parse_monomial("(y x3)"));
  CHECK(c2[0].sub == parse_monomial("(x1 x2)"));

  auto c3 = contexts(w, 3);
  REQUIRE(c3.size() == 1);
  CHECK(c3[0].frame == parse_monomial("y"));
  CHECK(c3[0].sub == w);

  CHECK(contexts(parse_monomial("(((x1 x2) (x3 x4)) ((x5 x6) (x7 x8)))"), 3).empty());

  // round trip: substituting sub for the placeholder reproduces w
  Rng rng(13);
  for (int t = 0; t < 40; ++t) {
    Monomial r = testutil::random_monomial(rng, testutil::xvars(2), 1 + testutil::pick(rng, 7));
    for (unsigned L = 1; L <= r.length(); ++L) {
      for (auto &ctx : contexts(r, L)) {
        std::map<Indeterminate, Monomial> sub{{Indeterminate::placeholder(), ctx.sub}};
        CHECK(substitute_leaves(ctx.frame, sub) == r);
        REQUIRE(contains_placeholder(ctx.frame));
        CHECK(ctx.sub.length() == L);
      }
    }
  }
}

TEST_CASE("enumerate_monomials") {
  auto one = testutil::xvars(1);
  CHECK(enumerate_monomials(one, 4, 0).size() == 5); // Catalan(3)

  auto three = testutil::xvars(3);
  auto withph = enumerate_monomials(three, 2, 1);
  CHECK(withph.size() == 6); // y g_i and g_i y

  auto only_y = enumerate_monomials(three, 1, 1);
  REQUIRE(only_y.size() == 1);
  CHECK(only_y[0] == parse_monomial("y"));

  // Catalan cardinality vs a brute-force recursive count
  std::function<unsigned long long(unsigned)> brute = [&](unsigned L) -> unsigned long long {
    if (L == 1) return 1;
    unsigned long long total = 0;
    for (unsigned a = 1; a < L; ++a) total += brute(a) * brute(L - a);
    return total;
  };
  for (unsigned L = 1; L <= 10; ++L)
    CHECK(enumerate_monomials(one, L, 0).size() == brute(L));

  // deduplication and determinism
  auto lst = enumerate_monomials(testutil::xvars(2), 4, 0);
  CHECK(std::is_sorted(lst.begin(), lst.end()));
  CHECK(std::adjacent_find(lst.begin(), lst.end()) == lst.end());
  CHECK(lst.size() == 5 * 16);

  CHECK_THROWS_AS(enumerate_monomials(one, 13, 0), DomainError);
}

TEST_CASE("occurrence count is 2 length - 1") {
  Rng rng(17);
  for (int t = 0; t < 60; ++t) {
    Monomial w = testutil::random_monomial(rng, testutil::xvars(3), 1 + testutil::pick(rng, 8));
    CHECK(submonomial_occurrences(w).size() == 2 * w.length() - 1);
  }
}

TEST_CASE("parse/print round trip is bit-exact") {
  Rng rng(19);
  std::vector<Indeterminate> vars = testutil::xvars(3);
  vars.push_back(Indeterminate::named("p"));
  vars.push_back(Indeterminate::named("q_3"));
  for (int t = 0; t < 100; ++t) {
    Monomial w = testutil::random_monomial(rng, vars, 1 + testutil::pick(rng, 8));
    std::string s = to_string(w);
    CHECK(parse_monomial(s) == w);
    CHECK(to_string(parse_monomial(s)) == s);
  }
  // whitespace laxness
  CHECK(parse_monomial("( x1   ( x2\tx3 ) )") == parse_monomial("(x1 (x2 x3))"));
  CHECK_THROWS_AS(parse_monomial("(x1"), ParseError);
  CHECK_THROWS_AS(parse_monomial("x1 x2"), ParseError);
  CHECK_THROWS_AS(parse_monomial(""), ParseError);
}

TEST_CASE("canonical ordering sorts by length then preorder") {
  Monomial a = parse_monomial("x1");
  Monomial b = parse_monomial("(x1 x2)");
  Monomial c = parse_monomial("((x1 x2) x3)");
  Monomial d = parse_monomial("(x1 (x2 x3))");
  CHECK(a < b);
  CHECK(b < c);
  CHECK(c < d); // products sort before leaves in the preorder
  CHECK(Indeterminate::var(2) < Indeterminate::var(10));
  CHECK(Indeterminate::var(3) < Indeterminate::placeholder());
  CHECK(Indeterminate::named("p") < Indeterminate::named("q1"));
}

TEST_CASE("commutative canonical form") {
  Monomial m1 = parse_monomial("((x2 x1) x3)");
  Monomial m2 = parse_monomial("(x3 (x1 x2))");
  CHECK(comm_canonical(m1) == comm_canonical(m2));
  CHECK(comm_canonical(m1) != comm_canonical(parse_monomial("((x1 x3) x2)")));
}
