#pragma once

// Shared helpers for the test suites: seeded deterministic generators for
// monomials, rationals, polynomials and algebra elements.

#include "separative/separative.hpp"

#include <random>
#include <vector>

namespace testutil {

using namespace separative;

using Rng = std::mt19937_64;

inline unsigned pick(Rng &rng, unsigned bound) { return static_cast<unsigned>(rng() % bound); }

inline Rational random_rational(Rng &rng) {
  long long num = static_cast<long long>(rng() % 19) - 9;
  long long den = 1 + static_cast<long long>(rng() % 9);
  return Rational(num, den);
}

inline Monomial random_monomial(Rng &rng, const std::vector<Indeterminate> &vars,
                                unsigned len) {
  if (len == 1) return Monomial(vars[pick(rng, static_cast<unsigned>(vars.size()))]);
  unsigned split = 1 + pick(rng, len - 1);
  return Monomial(random_monomial(rng, vars, split), random_monomial(rng, vars, len - split));
}

inline Polynomial<RationalField> random_polynomial(Rng &rng,
                                                   const std::vector<Indeterminate> &vars,
                                                   unsigned max_len, unsigned terms) {
  RationalField Q;
  Polynomial<RationalField> f(Q);
  for (unsigned t = 0; t < terms; ++t) {
    unsigned len = 1 + pick(rng, max_len);
    f.add_term(random_monomial(rng, vars, len), random_rational(rng));
  }
  return f;
}

template <class F>
typename StructAlgebra<F>::Element random_element(Rng &rng, const StructAlgebra<F> &A) {
  auto e = A.zero_element();
  for (unsigned i = 0; i < A.dim(); ++i) {
    if constexpr (std::is_same_v<F, RationalField>) {
      e[i] = random_rational(rng);
    } else {
      e[i] = A.field().from_integer(static_cast<long long>(rng() % 1000));
    }
  }
  return e;
}

inline std::vector<Indeterminate> xvars(unsigned r) {
  std::vector<Indeterminate> v;
  for (unsigned i = 1; i <= r; ++i) v.push_back(Indeterminate::var(i));
  return v;
}

} // namespace testutil
