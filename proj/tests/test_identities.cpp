#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace separative;
using testutil::Rng;

namespace {
RationalField Q;
Polynomial<RationalField> P(const std::string &s) { return parse_polynomial(Q, s); }

Multidegree deg(std::initializer_list<std::pair<const char *, unsigned>> items) {
  Multidegree d;
  for (auto &[name, c] : items) d.set(Indeterminate::named(name), c);
  return d;
}
} // namespace

TEST_CASE("presentations reject non-homogeneous identities") {
  CHECK_THROWS_AS(
      VarietyPresentation<RationalField>("bad", Q, {P("x1 + (x1 x1)")}),
      std::invalid_argument);
  CHECK_NOTHROW(VarietyPresentation<RationalField>("ok", Q, {P("(x1 x2) - (x2 x1)")}));
}

TEST_CASE("t_ideal_component of the associative presentation") {
  auto A = builtin_presentation("associative", Q);
  auto D = deg({{"x1", 1}, {"x2", 1}, {"x3", 1}});
  auto comp = t_ideal_component(A, D);
  CHECK(comp.contains(P("((x1 x2) x3) - (x1 (x2 x3))")));

  // degree-2 component is zero
  auto D2 = deg({{"x1", 1}, {"x2", 1}});
  CHECK(t_ideal_component(A, D2).dim() == 0);

  // commutativity is not a consequence of associativity
  CHECK_FALSE(is_congruent(P("(x1 x2)"), P("(x2 x1)"), A));

  CHECK_THROWS_AS(t_ideal_component(A, deg({{"x1", 9}})), DomainError);
}

TEST_CASE("t_ideal_component grows monotonically with the identity set") {
  auto A = builtin_presentation("associative", Q);
  VarietyPresentation<RationalField> AC(
      "assoc+comm", Q, {P("((x1 x2) x3) - (x1 (x2 x3))"), P("(x1 x2) - (x2 x1)")});
  for (auto D : {deg({{"x1", 1}, {"x2", 1}, {"x3", 1}}), deg({{"x1", 2}, {"x2", 1}}),
                 deg({{"x1", 1}, {"x2", 1}})}) {
    auto small = t_ideal_component(A, D);
    auto big = t_ideal_component(AC, D);
    for (auto &row : small.basis_polys(Q)) CHECK(big.contains(row));
  }
}

TEST_CASE("is_congruent") {
  auto A = builtin_presentation("associative", Q);
  CHECK(is_congruent(P("(x1 (x2 x3))"), P("((x1 x2) x3)"), A));
  CHECK(is_congruent(P("(x1 (x2 x3))"), P("(x1 (x2 x3))"), A));

  auto L = builtin_presentation("lie", Q);
  CHECK(is_congruent(P("((x1 x2) x3)"), P("(x1 (x2 x3)) + ((x1 x3) x2)"), L));
  // and in a Lie algebra the two sides really agree
  auto LA = lie_from_associative(strict_upper_triangular(4, Q));
  Rng rng(141);
  for (int t = 0; t < 20; ++t) {
    std::map<Indeterminate, StructAlgebra<RationalField>::Element> assign;
    for (unsigned v = 1; v <= 3; ++v)
      assign[Indeterminate::var(v)] = testutil::random_element(rng, LA);
    CHECK(evaluate(P("((x1 x2) x3)"), LA, assign) ==
          evaluate(P("(x1 (x2 x3)) + ((x1 x3) x2)"), LA, assign));
  }
}

TEST_CASE("verify_witness accepts all builtin witnesses") {
  for (const auto &name : {"associative", "lie", "jordan", "four-nilpotent-products"}) {
    auto Pn = builtin_presentation(name, Q);
    REQUIRE(Pn.witness());
    auto report = verify_witness(Pn);
    INFO("presentation " << name);
    CHECK(report.ok());
  }
  // the two auxiliary presentations carry no witness
  CHECK_FALSE(builtin_presentation("commutative-pqr", Q).witness());
  CHECK_FALSE(builtin_presentation("alternating-pqr", Q).witness());
  CHECK_THROWS_AS(builtin_presentation("nope", Q), std::invalid_argument);
}

TEST_CASE("the Lie certificates stay inside the eight outside-factor monomials") {
  auto L = builtin_presentation("lie", Q);
  // x = x1, y = x2: the eight monomials with x or y outside
  std::set<Monomial, MonomialLess> eight;
  for (auto s : {"(x1 (x2 z))", "(x1 (z x2))", "((x2 z) x1)", "((z x2) x1)", "(x2 (x1 z))",
                 "(x2 (z x1))", "((x1 z) x2)", "((z x1) x2)"})
    eight.insert(parse_monomial(s));
  for (auto &[key, target] : L.witness()->certificates)
    for (auto &[w, c] : target.terms()) CHECK(eight.count(w) == 1);
}

TEST_CASE("a witness with a z-outside certificate monomial fails the split-form check") {
  auto J = builtin_presentation("jordan", Q);
  auto broken_wit = *J.witness();
  Monomial shape = parse_monomial("(x1 (x2 x3))");
  // put z(x1 (x2 x3)) on its own right-hand side
  auto &target = broken_wit.certificates.at({shape, ZSide::Left});
  target.add_term(Monomial(Monomial(z_var()), shape), Rational(1));
  auto broken = J.with_witness(broken_wit);
  auto report = verify_witness(broken);
  CHECK_FALSE(report.ok());
  bool found_split_failure = false;
  for (auto &e : report.entries)
    if (!e.split_form_ok) found_split_failure = true;
  CHECK(found_split_failure);
}

TEST_CASE("verify_witness reports missing certificates") {
  auto A = builtin_presentation("associative", Q);
  auto wit = *A.witness();
  wit.certificates.erase({parse_monomial("(x1 x2)"), ZSide::Left});
  CHECK_THROWS_AS(verify_witness(A.with_witness(wit)), DomainError);
}

TEST_CASE("derive_jordan_witness") {
  auto wit = derive_jordan_witness(Q);
  CHECK(wit.d == 1);
  CHECK(wit.certificates.size() == 4);

  // the certificate target expresses z(x1(x2 x3)) in split form
  Monomial u0 = parse_monomial("(x1 (x2 x3))");
  const auto &target = wit.certificates.at({u0, ZSide::Left});
  CHECK(target.term_count() == 5);
  std::set<Indeterminate> zv{z_var()};
  for (auto &[w, c] : target.terms()) {
    bool lz = false, rz = false;
    std::vector<Indeterminate> leaves;
    collect_leaves(w.left(), leaves);
    for (auto v : leaves) lz |= v == z_var();
    leaves.clear();
    collect_leaves(w.right(), leaves);
    for (auto v : leaves) rz |= v == z_var();
    CHECK(lz != rz);
    CHECK((lz ? w.left() : w.right()).length() >= 2);
  }

  // characteristic 2 is rejected; other characteristics work
  CHECK_THROWS_AS(derive_jordan_witness(PrimeField(2)), DomainError);
  PrimeField F7(7);
  auto wit7 = derive_jordan_witness(F7);
  CHECK(wit7.certificates.size() == 4);
  auto J7 = builtin_presentation("jordan", F7);
  CHECK(verify_witness(J7).ok());

  // pre-division audit: the multilinear part of the expanded identity,
  // folded up to commutativity, has all coefficients +-2
  std::map<Indeterminate, Polynomial<RationalField>> s{
      {Indeterminate::named("x"), P("x2 + x3 + z")},
      {Indeterminate::named("y0"), P("x1")}};
  auto f = P("((x y0) (x x)) - (x (y0 (x x)))");
  auto ml = comm_canonical(multilinear_part(
      substitute(f, s), {Indeterminate::var(1), Indeterminate::var(2), Indeterminate::var(3),
                         Indeterminate::named("z")}));
  REQUIRE(ml.term_count() == 6);
  for (auto &[w, c] : ml.terms()) CHECK((c == 2 || c == -2));

  // exactly one commutative class has z as outside factor
  unsigned outside = 0;
  Monomial expected = comm_canonical(parse_monomial("(z (x1 (x2 x3)))"));
  for (auto &[w, c] : ml.terms()) {
    bool z_outside = (w.left().is_leaf() && w.left().leaf() == z_var()) ||
                     (w.right().is_leaf() && w.right().leaf() == z_var());
    if (z_outside) {
      ++outside;
      CHECK(w == expected);
    }
  }
  CHECK(outside == 1);
}

TEST_CASE("the multilinear Jordan identity vanishes on symmetric matrices") {
  // post-division identity: multilinear part / 2
  std::map<Indeterminate, Polynomial<RationalField>> s{
      {Indeterminate::named("x"), P("x2 + x3 + z")},
      {Indeterminate::named("y0"), P("x1")}};
  auto f = P("((x y0) (x x)) - (x (y0 (x x)))");
  auto ml = multilinear_part(
      substitute(f, s), {Indeterminate::var(1), Indeterminate::var(2), Indeterminate::var(3),
                         Indeterminate::named("z")});
  auto halved = Rational(1, 2) * ml;

  auto J3 = jordan_from_associative(full_matrix(3, Q));
  std::vector<StructAlgebra<RationalField>::Element> sym;
  std::vector<std::string> labels;
  auto e = [&](unsigned i, unsigned j) {
    return J3.basis_element(
        static_cast<unsigned>(J3.label_index("e" + std::to_string(i) + "_" + std::to_string(j))));
  };
  for (unsigned i = 1; i <= 3; ++i)
    for (unsigned j = i; j <= 3; ++j) {
      auto v = e(i, j);
      if (i != j) v = J3.add(v, e(j, i));
      sym.push_back(v);
      labels.push_back("s" + std::to_string(i) + "_" + std::to_string(j));
    }
  auto S = subalgebra_from_basis(J3, sym, labels);
  Rng rng(149);
  for (int t = 0; t < 100; ++t) {
    std::map<Indeterminate, StructAlgebra<RationalField>::Element> assign;
    for (auto v : {Indeterminate::var(1), Indeterminate::var(2), Indeterminate::var(3),
                   Indeterminate::named("z")})
      assign[v] = testutil::random_element(rng, S);
    CHECK(S.is_zero_element(evaluate(halved, S, assign)));
  }
}

TEST_CASE("separate_once") {
  auto A = builtin_presentation("associative", Q);
  SeparationRewriter<RationalField> rw(A);

  // already separating: unchanged
  Monomial w1 = parse_monomial("(x1 (x2 x3))");
  CHECK(rw.separate_once(w1) == Polynomial<RationalField>(Q, w1));

  // (x1 x2)(x3 x4): a single 1-separating monomial congruent to w
  Monomial w2 = parse_monomial("((x1 x2) (x3 x4))");
  auto out = rw.separate_once(w2);
  REQUIRE(out.term_count() == 1);
  CHECK(is_range_separating(out.terms().begin()->first, 1, 1));
  CHECK(is_congruent(Polynomial<RationalField>(Q, w2), out, A));

  // Lie: a combination of 1-separating monomials that evaluates equally
  auto L = builtin_presentation("lie", Q);
  SeparationRewriter<RationalField> rwl(L);
  auto outl = rwl.separate_once(w2);
  for (auto &[m, c] : outl.terms()) CHECK(is_range_separating(m, 1, 1));
  auto LA = lie_from_associative(strict_upper_triangular(4, Q));
  Rng rng(151);
  for (int t = 0; t < 30; ++t) {
    std::map<Indeterminate, StructAlgebra<RationalField>::Element> assign;
    for (unsigned v = 1; v <= 4; ++v)
      assign[Indeterminate::var(v)] = testutil::random_element(rng, LA);
    CHECK(evaluate(Polynomial<RationalField>(Q, w2), LA, assign) ==
          evaluate(outl, LA, assign));
  }

  CHECK_THROWS_AS(rw.separate_once(parse_monomial("x1")), std::invalid_argument);
}

TEST_CASE("separate_n") {
  auto A = builtin_presentation("associative", Q);
  SeparationRewriter<RationalField> rw(A);

  // n = 1 is separate_once
  Monomial w = parse_monomial("((x1 x2) (x3 x4))");
  CHECK(rw.separate_n(w, 1) == rw.separate_once(w));

  // associative, length 4, n = 2: all outputs [2,2]-separating, and the
  // rewrite is exact in strictly upper triangular 4x4 matrices
  Monomial w2 = parse_monomial("(x1 (x2 (x3 x4)))");
  auto out = rw.separate_n(w2, 2);
  for (auto &[m, c] : out.terms()) {
    CHECK(is_range_separating(m, 2, 2));
    CHECK(Multidegree::of_monomial(m) == Multidegree::of_monomial(w2));
  }
  auto U4 = strict_upper_triangular(4, Q);
  Rng rng(157);
  for (int t = 0; t < 30; ++t) {
    std::map<Indeterminate, StructAlgebra<RationalField>::Element> assign;
    for (unsigned v = 1; v <= 4; ++v)
      assign[Indeterminate::var(v)] = testutil::random_element(rng, U4);
    CHECK(evaluate(Polynomial<RationalField>(Q, w2), U4, assign) == evaluate(out, U4, assign));
  }

  // Jordan, length 5, n = 3: outputs [3,4]-separating, exact on the
  // symmetric-matrix Jordan algebra
  auto J = builtin_presentation("jordan", Q);
  SeparationRewriter<RationalField> rwj(J);
  Monomial w5 = parse_monomial("((x1 x2) ((x3 x4) x5))");
  auto outj = rwj.separate_n(w5, 3);
  for (auto &[m, c] : outj.terms()) {
    CHECK(is_range_separating(m, 3, 4));
    CHECK(Multidegree::of_monomial(m) == Multidegree::of_monomial(w5));
  }
  auto M3 = jordan_from_associative(full_matrix(3, Q));
  std::vector<StructAlgebra<RationalField>::Element> sym;
  std::vector<std::string> labels;
  auto e = [&](unsigned i, unsigned j) {
    return M3.basis_element(
        static_cast<unsigned>(M3.label_index("e" + std::to_string(i) + "_" + std::to_string(j))));
  };
  for (unsigned i = 1; i <= 3; ++i)
    for (unsigned j = i; j <= 3; ++j) {
      auto v = e(i, j);
      if (i != j) v = M3.add(v, e(j, i));
      sym.push_back(v);
      labels.push_back("s" + std::to_string(i) + "_" + std::to_string(j));
    }
  auto S = subalgebra_from_basis(M3, sym, labels);
  for (int t = 0; t < 30; ++t) {
    std::map<Indeterminate, StructAlgebra<RationalField>::Element> assign;
    for (unsigned v = 1; v <= 5; ++v)
      assign[Indeterminate::var(v)] = testutil::random_element(rng, S);
    CHECK(evaluate(Polynomial<RationalField>(Q, w5), S, assign) == evaluate(outj, S, assign));
  }

  CHECK_THROWS_AS(rw.separate_n(parse_monomial("(x1 x2)"), 2), std::invalid_argument);
  auto C = builtin_presentation("commutative-pqr", Q);
  CHECK_THROWS_AS(SeparationRewriter<RationalField>(C), std::invalid_argument);
}

TEST_CASE("separate_n congruence at small degrees") {
  Rng rng(163);
  for (const auto &name : {"associative", "lie"}) {
    auto Pn = builtin_presentation(name, Q);
    SeparationRewriter<RationalField> rw(Pn);
    for (int t = 0; t < 8; ++t) {
      Monomial w = testutil::random_monomial(rng, testutil::xvars(2), 4);
      for (unsigned n = 1; n < w.length(); ++n) {
        auto out = rw.separate_n(w, n);
        CHECK(is_congruent(Polynomial<RationalField>(Q, w), out, Pn));
      }
    }
  }
  // Jordan at the degree where certificates fire
  auto J = builtin_presentation("jordan", Q);
  SeparationRewriter<RationalField> rwj(J);
  Monomial w = parse_monomial("((x1 x2) (x3 x4))");
  CHECK(is_congruent(Polynomial<RationalField>(Q, w), rwj.separate_n(w, 1), J));
}

TEST_CASE("four-nilpotent-products rewriting") {
  auto P4 = builtin_presentation("four-nilpotent-products", Q);
  REQUIRE(P4.witness());
  CHECK(P4.witness()->split_z);
  SeparationRewriter<RationalField> rw(P4);
  // (x1 x2)(x3 x4) is congruent to 0 in this variety
  auto out = rw.separate_once(parse_monomial("((x1 x2) (x3 x4))"));
  CHECK(out.is_zero());
  // already 1-separating monomials survive
  Monomial w = parse_monomial("(((x1 x2) x3) x4)");
  CHECK(rw.separate_once(w) == Polynomial<RationalField>(Q, w));
  // deeper: ((x1 x2)(x3 x4)) x5 is 1-separating already; (x1 x2)((x3 x4) x5)
  // rewrites to zero
  auto out2 = rw.separate_n(parse_monomial("((x1 x2) ((x3 x4) x5))"), 2);
  CHECK(out2.is_zero());
}

TEST_CASE("witness search reconstructs verifiable certificates") {
  auto A = builtin_presentation("associative", Q);
  auto found = search_witness(A, 0);
  REQUIRE(found);
  auto Pw = VarietyPresentation<RationalField>("assoc-searched", Q, A.defining_identities(),
                                               *found);
  CHECK(verify_witness(Pw).ok());

  auto L = builtin_presentation("lie", Q);
  auto foundl = search_witness(L, 0);
  REQUIRE(foundl);
  CHECK(verify_witness(L.with_witness(*foundl)).ok());

  // the commutative-pqr variety has no d=0 certificates
  auto C = builtin_presentation("commutative-pqr", Q);
  CHECK_FALSE(search_witness(C, 0));
}

TEST_CASE("presentation file format round trips") {
  for (const auto &name :
       {"associative", "lie", "jordan", "four-nilpotent-products", "commutative-pqr"}) {
    auto Pn = builtin_presentation(name, Q);
    std::string text = to_file_string(Pn);
    auto parsed = parse_presentation(Q, text, Pn.name());
    CHECK(parsed.defining_identities() == Pn.defining_identities());
    CHECK(parsed.witness().has_value() == Pn.witness().has_value());
    if (Pn.witness()) {
      CHECK(parsed.witness()->d == Pn.witness()->d);
      CHECK(parsed.witness()->split_z == Pn.witness()->split_z);
      CHECK(parsed.witness()->certificates == Pn.witness()->certificates);
    }
    CHECK(to_file_string(parsed) == text);
  }
  CHECK_THROWS_AS(parse_presentation(Q, "vars x1\n(x1 x1)\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation(Q, "field Q\nvars x1\n(x1 x2)\n"), ParseError);
}
