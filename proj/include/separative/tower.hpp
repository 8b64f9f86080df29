#pragma once

// Truncated towers: the p/q/r counterexample algebra and its commutative
// and alternating variants, the free nilpotent associative reference
// tower, r-coefficient matrices and rank diagnostics, the minimum-products
// statistic, filtration codimension profiles, and separation defects.

#include "separative/findim.hpp"
#include "separative/linalg.hpp"
#include "separative/monomial.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace separative {

// ---------------------------------------------------------------------------
// level constructions

/// Truncation level S_i of the algebra with basis p, q_m, r_{mn} and
/// products p p = q1, p q_m = q_{m+1}, q_m q_n = r_{mn}, everything else
/// zero; q_m with m >= i and r_{mn} with max(m,n) >= i are set to zero.
/// Basis order: p, q1..q_{i-1}, r_{11}, r_{12}, ..., r_{i-1,i-1}.
template <class F> StructAlgebra<F> build_pqr(unsigned i, F field) {
  if (i < 2) throw std::invalid_argument("build_pqr: level must be >= 2");
  unsigned k = i - 1;
  std::vector<std::string> labels{"p"};
  for (unsigned m = 1; m <= k; ++m) labels.push_back("q" + std::to_string(m));
  for (unsigned m = 1; m <= k; ++m)
    for (unsigned n = 1; n <= k; ++n)
      labels.push_back("r" + std::to_string(m) + "_" + std::to_string(n));
  StructAlgebra<F> A(field, labels);
  auto q = [&](unsigned m) { return m; };                      // q_m at index m
  auto r = [&](unsigned m, unsigned n) { return k + (m - 1) * k + n; }; // r_{mn}
  A.set_product(0, 0, {{q(1), field.one()}});
  for (unsigned m = 1; m < k; ++m) A.set_product(0, q(m), {{q(m + 1), field.one()}});
  for (unsigned m = 1; m <= k; ++m)
    for (unsigned n = 1; n <= k; ++n) A.set_product(q(m), q(n), {{r(m, n), field.one()}});
  return A;
}

/// Commutative variant: q_m p = p q_m = q_{m+1} and r_{mn} = r_{nm} as one
/// basis element (stored for m <= n).
template <class F> StructAlgebra<F> build_pqr_comm(unsigned i, F field) {
  if (i < 2) throw std::invalid_argument("build_pqr_comm: level must be >= 2");
  unsigned k = i - 1;
  std::vector<std::string> labels{"p"};
  for (unsigned m = 1; m <= k; ++m) labels.push_back("q" + std::to_string(m));
  std::map<std::pair<unsigned, unsigned>, unsigned> ridx;
  for (unsigned m = 1; m <= k; ++m)
    for (unsigned n = m; n <= k; ++n) {
      ridx[{m, n}] = static_cast<unsigned>(labels.size());
      labels.push_back("r" + std::to_string(m) + "_" + std::to_string(n));
    }
  StructAlgebra<F> A(field, labels);
  auto q = [&](unsigned m) { return m; };
  auto r = [&](unsigned m, unsigned n) { return ridx.at({std::min(m, n), std::max(m, n)}); };
  A.set_product(0, 0, {{q(1), field.one()}});
  for (unsigned m = 1; m < k; ++m) {
    A.set_product(0, q(m), {{q(m + 1), field.one()}});
    A.set_product(q(m), 0, {{q(m + 1), field.one()}});
  }
  for (unsigned m = 1; m <= k; ++m)
    for (unsigned n = 1; n <= k; ++n) A.set_product(q(m), q(n), {{r(m, n), field.one()}});
  return A;
}

/// Alternating variant: the closed subalgebra generated by p and q1 inside
/// the p/q/r algebra under the bracket x*y = xy - yx, truncated. Basis:
/// p, q1..q_{i-1}, and a_{mn} = r_{mn} - r_{nm} for m < n. Satisfies
/// x^2 = 0 on the nose.
template <class F> StructAlgebra<F> build_pqr_alt(unsigned i, F field) {
  if (i < 2) throw std::invalid_argument("build_pqr_alt: level must be >= 2");
  unsigned k = i - 1;
  std::vector<std::string> labels{"p"};
  for (unsigned m = 1; m <= k; ++m) labels.push_back("q" + std::to_string(m));
  std::map<std::pair<unsigned, unsigned>, unsigned> aidx;
  for (unsigned m = 1; m <= k; ++m)
    for (unsigned n = m + 1; n <= k; ++n) {
      aidx[{m, n}] = static_cast<unsigned>(labels.size());
      labels.push_back("a" + std::to_string(m) + "_" + std::to_string(n));
    }
  StructAlgebra<F> A(field, labels);
  auto q = [&](unsigned m) { return m; };
  for (unsigned m = 1; m < k; ++m) {
    A.set_product(0, q(m), {{q(m + 1), field.one()}});
    A.set_product(q(m), 0, {{q(m + 1), -field.one()}});
  }
  for (unsigned m = 1; m <= k; ++m)
    for (unsigned n = 1; n <= k; ++n) {
      if (m == n) continue;
      unsigned idx = aidx.at({std::min(m, n), std::max(m, n)});
      A.set_product(q(m), q(n), {{idx, m < n ? field.one() : -field.one()}});
    }
  return A;
}

/// The free nilpotent associative algebra on r generators of class c:
/// basis all words of length <= c in g_1..g_r, product concatenation,
/// zero beyond length c.
template <class F>
StructAlgebra<F> build_free_nilpotent_assoc(unsigned r, unsigned c, F field,
                                            unsigned dim_cap = 4096) {
  if (r < 1 || c < 1) throw std::invalid_argument("build_free_nilpotent_assoc: need r, c >= 1");
  unsigned long long dim = 0, layer = 1;
  for (unsigned l = 1; l <= c; ++l) {
    layer *= r;
    dim += layer;
    if (dim > dim_cap)
      throw DomainError("build_free_nilpotent_assoc: dimension exceeds the cap " +
                        std::to_string(dim_cap));
  }
  std::vector<std::vector<unsigned>> words;
  std::map<std::vector<unsigned>, unsigned> index;
  std::vector<std::string> labels;
  std::vector<unsigned> w;
  // enumerate by length, then lexicographically
  for (unsigned l = 1; l <= c; ++l) {
    std::function<void()> rec = [&]() {
      if (w.size() == l) {
        index[w] = static_cast<unsigned>(words.size());
        words.push_back(w);
        std::string lbl;
        for (auto g : w) lbl += "g" + std::to_string(g + 1);
        labels.push_back(lbl);
        return;
      }
      for (unsigned g = 0; g < r; ++g) {
        w.push_back(g);
        rec();
        w.pop_back();
      }
    };
    rec();
  }
  StructAlgebra<F> A(field, labels);
  for (unsigned a = 0; a < words.size(); ++a)
    for (unsigned b = 0; b < words.size(); ++b) {
      if (words[a].size() + words[b].size() > c) continue;
      std::vector<unsigned> cat = words[a];
      cat.insert(cat.end(), words[b].begin(), words[b].end());
      A.set_product(a, b, {{index.at(cat), field.one()}});
    }
  return A;
}

// ---------------------------------------------------------------------------
// towers

template <class F> struct LinearMap {
  using Scalar = typename F::Scalar;
  unsigned rows = 0, cols = 0;
  std::vector<std::vector<Scalar>> a; // rows x cols

  std::vector<Scalar> apply(const F &field, const std::vector<Scalar> &x) const {
    std::vector<Scalar> y(rows, field.zero());
    for (unsigned j = 0; j < cols; ++j) {
      if (F::is_zero(x[j])) continue;
      for (unsigned i = 0; i < rows; ++i)
        if (!F::is_zero(a[i][j])) y[i] += a[i][j] * x[j];
    }
    return y;
  }
};

/// A finite family S_first, ..., S_last with surjective connecting
/// homomorphisms S_{i+1} -> S_i and a generator family closed under the
/// projections.
template <class F> struct TruncatedTower {
  using Element = typename StructAlgebra<F>::Element;

  std::string family; // pqr | pqr-comm | pqr-alt | free-assoc
  unsigned first = 2;
  std::vector<StructAlgebra<F>> levels;
  std::vector<LinearMap<F>> connecting;          // [k]: levels[k+1] -> levels[k]
  std::vector<std::vector<Element>> generators;  // per level

  unsigned last() const { return first + static_cast<unsigned>(levels.size()) - 1; }
  const StructAlgebra<F> &level(unsigned i) const { return levels.at(i - first); }
  const std::vector<Element> &generators_at(unsigned i) const {
    return generators.at(i - first);
  }
};

namespace detail {
/// Connecting map that matches basis labels (anything absent downstairs
/// goes to zero).
template <class F>
LinearMap<F> label_projection(const StructAlgebra<F> &to, const StructAlgebra<F> &from) {
  LinearMap<F> m;
  m.rows = to.dim();
  m.cols = from.dim();
  m.a.assign(m.rows, std::vector<typename F::Scalar>(m.cols, to.field().zero()));
  for (unsigned j = 0; j < from.dim(); ++j) {
    int i = to.label_index(from.basis_labels()[j]);
    if (i >= 0) m.a[static_cast<unsigned>(i)][j] = to.field().one();
  }
  return m;
}
} // namespace detail

template <class F>
TruncatedTower<F> build_tower(const std::string &family, unsigned max_level, F field) {
  TruncatedTower<F> T;
  T.family = family;
  T.first = 2;
  if (max_level < 2) throw std::invalid_argument("build_tower: need at least level 2");
  for (unsigned i = 2; i <= max_level; ++i) {
    StructAlgebra<F> A = [&]() {
      if (family == "pqr") return build_pqr(i, field);
      if (family == "pqr-comm") return build_pqr_comm(i, field);
      if (family == "pqr-alt") return build_pqr_alt(i, field);
      if (family == "free-assoc") return build_free_nilpotent_assoc(2, i, field);
      throw std::invalid_argument("build_tower: unknown family '" + family + "'");
    }();
    std::vector<typename StructAlgebra<F>::Element> gens;
    if (family == "free-assoc") {
      gens.push_back(A.basis_element(static_cast<unsigned>(A.label_index("g1"))));
      gens.push_back(A.basis_element(static_cast<unsigned>(A.label_index("g2"))));
    } else {
      gens.push_back(A.basis_element(0)); // p
      if (family == "pqr-alt")
        gens.push_back(A.basis_element(static_cast<unsigned>(A.label_index("q1"))));
    }
    T.levels.push_back(std::move(A));
    T.generators.push_back(std::move(gens));
  }
  for (size_t k = 0; k + 1 < T.levels.size(); ++k)
    T.connecting.push_back(detail::label_projection(T.levels[k], T.levels[k + 1]));
  return T;
}

/// Structural checks: connecting maps are surjective algebra homomorphisms,
/// composites agree with direct truncation, and the projected generators
/// generate every level. Returns a list of violations (empty = valid).
template <class F> std::vector<std::string> validate_tower(const TruncatedTower<F> &T) {
  std::vector<std::string> issues;
  const F &field = T.levels.front().field();
  for (size_t k = 0; k + 1 < T.levels.size(); ++k) {
    const auto &to = T.levels[k], &from = T.levels[k + 1];
    const auto &phi = T.connecting[k];
    // surjectivity
    RowSpan<F> image(field, to.dim());
    for (unsigned j = 0; j < from.dim(); ++j) image.add(phi.apply(field, from.basis_element(j)));
    if (image.rank() != to.dim())
      issues.push_back("connecting map into level " + std::to_string(T.first + k) +
                       " is not surjective");
    // multiplicativity on basis pairs
    for (unsigned a = 0; a < from.dim(); ++a)
      for (unsigned b = 0; b < from.dim(); ++b) {
        auto lhs = phi.apply(field, from.multiply(from.basis_element(a), from.basis_element(b)));
        auto rhs = to.multiply(phi.apply(field, from.basis_element(a)),
                               phi.apply(field, from.basis_element(b)));
        if (lhs != rhs) {
          issues.push_back("connecting map into level " + std::to_string(T.first + k) +
                           " is not multiplicative at basis pair (" +
                           from.basis_labels()[a] + ", " + from.basis_labels()[b] + ")");
          goto next_map;
        }
      }
  next_map:;
    // generators project to generators
    const auto &gens_hi = T.generators[k + 1];
    const auto &gens_lo = T.generators[k];
    if (gens_hi.size() != gens_lo.size()) {
      issues.push_back("generator counts differ between adjacent levels");
    } else {
      for (size_t g = 0; g < gens_hi.size(); ++g)
        if (phi.apply(field, gens_hi[g]) != gens_lo[g])
          issues.push_back("generator " + std::to_string(g) + " does not project to level " +
                           std::to_string(T.first + k));
    }
  }
  // each level is generated by its generator family
  for (size_t k = 0; k < T.levels.size(); ++k) {
    auto closure = subalgebra_closure(T.levels[k], T.generators[k]);
    if (closure.size() != T.levels[k].dim())
      issues.push_back("generators do not generate level " + std::to_string(T.first + k));
  }
  return issues;
}

// ---------------------------------------------------------------------------
// r-matrices and rank diagnostics

template <class F> struct RMatrix {
  std::vector<std::vector<typename F::Scalar>> m; // (i-1) x (i-1)

  unsigned rank(const F &field) const {
    if (m.empty()) return 0;
    RowSpan<F> span(field, static_cast<unsigned>(m.front().size()));
    for (auto &row : m) span.add(row);
    return span.rank();
  }
};

namespace detail {
template <class F>
unsigned pqr_side(const StructAlgebra<F> &A) {
  // recover i-1 from the label set: number of q's
  unsigned k = 0;
  while (A.label_index("q" + std::to_string(k + 1)) >= 0) ++k;
  if (k == 0 || A.label_index("p") != 0)
    throw std::invalid_argument("expected a pqr-family level algebra");
  return k;
}
} // namespace detail

/// Coefficient of q_m, m = 1..i-1, as a column.
template <class F>
std::vector<typename F::Scalar> q_column(const StructAlgebra<F> &A,
                                         const typename StructAlgebra<F>::Element &a) {
  unsigned k = detail::pqr_side(A);
  std::vector<typename F::Scalar> col;
  for (unsigned m = 1; m <= k; ++m)
    col.push_back(a[static_cast<unsigned>(A.label_index("q" + std::to_string(m)))]);
  return col;
}

/// The matrix of r_{mn} coefficients of an element of a pqr-family level.
/// For the plain family entry (m,n) is the coefficient of r_{mn}; for the
/// commutative family the symmetric matrix is returned as stored (no
/// doubling; see r_matrix_doubled); for the alternating family the matrix
/// is antisymmetric with entry (m,n) = coeff(a_{mn}) for m < n.
template <class F>
RMatrix<F> r_matrix(const std::string &family, const StructAlgebra<F> &A,
                    const typename StructAlgebra<F>::Element &a) {
  unsigned k = detail::pqr_side(A);
  RMatrix<F> R;
  R.m.assign(k, std::vector<typename F::Scalar>(k, A.field().zero()));
  for (unsigned m = 1; m <= k; ++m)
    for (unsigned n = 1; n <= k; ++n) {
      std::string lbl;
      typename F::Scalar sign = A.field().one();
      if (family == "pqr") {
        lbl = "r" + std::to_string(m) + "_" + std::to_string(n);
      } else if (family == "pqr-comm") {
        lbl = "r" + std::to_string(std::min(m, n)) + "_" + std::to_string(std::max(m, n));
      } else if (family == "pqr-alt") {
        if (m == n) continue;
        lbl = "a" + std::to_string(std::min(m, n)) + "_" + std::to_string(std::max(m, n));
        if (m > n) sign = -A.field().one();
      } else {
        throw std::invalid_argument("r_matrix: unknown pqr family '" + family + "'");
      }
      int idx = A.label_index(lbl);
      if (idx < 0) throw std::invalid_argument("r_matrix: element is not from a " + family +
                                               " level");
      R.m[m - 1][n - 1] = sign * a[static_cast<unsigned>(idx)];
    }
  return R;
}

/// Commutative-variant convention: the symmetric r-matrix with its main
/// diagonal doubled. Products a*b have rank <= 2 in this matrix.
template <class F>
RMatrix<F> r_matrix_doubled(const StructAlgebra<F> &A,
                            const typename StructAlgebra<F>::Element &a) {
  RMatrix<F> R = r_matrix("pqr-comm", A, a);
  auto two = A.field().from_integer(2);
  for (unsigned m = 0; m < R.m.size(); ++m) R.m[m][m] = two * R.m[m][m];
  return R;
}

template <class F>
unsigned r_rank(const std::string &family, const StructAlgebra<F> &A,
                const typename StructAlgebra<F>::Element &a) {
  if (family == "pqr-comm") return r_matrix_doubled(A, a).rank(A.field());
  return r_matrix(family, A, a).rank(A.field());
}

/// Lower bound on the number of products of elements needed to write `a`
/// as a sum of products: the r-matrix of a single product has rank <= 1
/// (plain) resp. <= 2 (doubled-diagonal, comm/alt), and rank is
/// subadditive.
template <class F>
unsigned min_products_lower_bound(const std::string &family, const StructAlgebra<F> &A,
                                  const typename StructAlgebra<F>::Element &a) {
  unsigned rk = r_rank(family, A, a);
  if (family == "pqr") return rk;
  return (rk + 1) / 2;
}

/// The diagonal element sum_m r_{mm} of a plain or commutative level.
template <class F>
typename StructAlgebra<F>::Element diag_element(const std::string &family,
                                                const StructAlgebra<F> &A) {
  if (family != "pqr" && family != "pqr-comm")
    throw std::invalid_argument("diag_element: defined for pqr and pqr-comm levels");
  unsigned k = detail::pqr_side(A);
  auto e = A.zero_element();
  for (unsigned m = 1; m <= k; ++m) {
    std::string lbl = "r" + std::to_string(m) + "_" + std::to_string(m);
    e[static_cast<unsigned>(A.label_index(lbl))] = A.field().one();
  }
  return e;
}

// ---------------------------------------------------------------------------
// filtration codimension profile and separation defect

struct CodimEntry {
  unsigned level = 0;
  unsigned codim = 0;
  bool complement_spanned = false; // monomials of length < n in the
                                   // generators span a complement
};

template <class F>
std::vector<CodimEntry> filtration_codim_profile(const TruncatedTower<F> &T, unsigned n) {
  if (n < 1) throw std::invalid_argument("filtration_codim_profile: n must be positive");
  std::vector<CodimEntry> out;
  for (size_t k = 0; k < T.levels.size(); ++k) {
    const auto &A = T.levels[k];
    Subspace<F> filt = lower_filtration(A, n);
    CodimEntry entry;
    entry.level = T.first + static_cast<unsigned>(k);
    entry.codim = A.dim() - filt.dim();
    // span of values of all generator monomials of length < n
    Subspace<F> sum = filt;
    const auto &gens = T.generators[k];
    std::vector<Indeterminate> gvars;
    std::map<Indeterminate, typename StructAlgebra<F>::Element> assign;
    for (size_t g = 0; g < gens.size(); ++g) {
      gvars.push_back(Indeterminate::named("g" + std::to_string(g + 1)));
      assign[gvars.back()] = gens[g];
    }
    for (unsigned len = 1; len < n; ++len)
      for (const auto &mon : enumerate_monomials(gvars, len, 0))
        sum.add(evaluate_monomial<F>(mon, A, assign));
    entry.complement_spanned = sum.dim() == A.dim();
    out.push_back(entry);
  }
  return out;
}

namespace detail {
/// f_u as a chain of one-sided multiplications by concrete elements: the
/// value of u(g_1,...,g_r, a) is obtained by applying the ops innermost
/// first. Returns nothing when a concrete subtree evaluates to zero (the
/// map is then identically zero).
template <class F> struct HoleOps {
  std::vector<std::pair<bool, typename StructAlgebra<F>::Element>> ops; // (left_mult, by)
};

template <class F>
std::optional<HoleOps<F>>
hole_ops(const Monomial &u, const StructAlgebra<F> &A,
         const std::map<Indeterminate, typename StructAlgebra<F>::Element> &assign) {
  if (u.is_leaf()) {
    if (!u.leaf().is_placeholder())
      throw std::invalid_argument("hole_ops: monomial does not contain the placeholder");
    return HoleOps<F>{};
  }
  bool lph = contains_placeholder(u.left());
  const Monomial &hole_side = lph ? u.left() : u.right();
  const Monomial &concrete_side = lph ? u.right() : u.left();
  std::map<const void *, typename StructAlgebra<F>::Element> memo;
  auto value = evaluate_monomial<F>(concrete_side, A, assign, &memo);
  if (A.is_zero_element(value)) return std::nullopt;
  auto inner = hole_ops<F>(hole_side, A, assign);
  if (!inner) return std::nullopt;
  // left_mult means the hole value is multiplied on the left by `by`
  inner->ops.emplace_back(!lph, std::move(value));
  return inner;
}
} // namespace detail

/// Per level, the least d <= d_max such that the lower filtration A_(n)
/// equals the sum of the images f_u(S) over monomials u of lengths
/// n..n+d in the generators and one placeholder. Empty optional when no
/// d <= d_max suffices.
template <class F>
std::vector<std::optional<unsigned>>
separation_defect(const TruncatedTower<F> &T, unsigned n, unsigned d_max,
                  unsigned enum_cap = kDefaultEnumLengthCap) {
  if (n < 2) throw std::invalid_argument("separation_defect: n must be >= 2");
  std::vector<std::optional<unsigned>> out;
  for (size_t k = 0; k < T.levels.size(); ++k) {
    const auto &A = T.levels[k];
    const auto &gens = T.generators[k];
    Subspace<F> target = lower_filtration(A, n);
    std::vector<Indeterminate> gvars;
    std::map<Indeterminate, typename StructAlgebra<F>::Element> assign;
    for (size_t g = 0; g < gens.size(); ++g) {
      gvars.push_back(Indeterminate::named("x" + std::to_string(g + 1)));
      assign[gvars.back()] = gens[g];
    }
    Subspace<F> span(A.field(), A.dim());
    std::optional<unsigned> defect;
    if (span.dim() == target.dim()) defect = 0; // zero filtration
    for (unsigned d = 0; !defect && d <= d_max; ++d) {
      for (const auto &u : enumerate_monomials(gvars, n + d, 1, enum_cap)) {
        auto ops = detail::hole_ops<F>(u, A, assign);
        if (!ops) continue;
        for (unsigned b = 0; b < A.dim(); ++b) {
          auto v = A.basis_element(b);
          for (auto &[left_mult, by] : ops->ops) {
            v = left_mult ? A.multiply(by, v) : A.multiply(v, by);
            if (A.is_zero_element(v)) break;
          }
          if (A.is_zero_element(v)) continue;
          span.add(std::move(v));
        }
        if (span.dim() == target.dim()) {
          defect = d;
          break;
        }
      }
    }
    out.push_back(defect);
  }
  return out;
}

// ---------------------------------------------------------------------------
// per-level report

struct TowerReportRow {
  unsigned level = 0;
  unsigned dim = 0;
  std::optional<unsigned> nilindex;
  unsigned codim = 0;                  // of A_(n)
  std::optional<unsigned> defect;      // at the same n
  std::optional<unsigned> diagrank;    // rank of the diagonal element
};

template <class F>
std::vector<TowerReportRow> tower_report(const TruncatedTower<F> &T, unsigned n = 2,
                                         unsigned d_max = kDefaultEnumLengthCap - 2) {
  auto codims = filtration_codim_profile(T, n);
  auto defects = separation_defect(T, n, d_max);
  std::vector<TowerReportRow> rows;
  for (size_t k = 0; k < T.levels.size(); ++k) {
    TowerReportRow row;
    row.level = T.first + static_cast<unsigned>(k);
    row.dim = T.levels[k].dim();
    row.nilindex = is_nilpotent(T.levels[k]).index;
    row.codim = codims[k].codim;
    row.defect = defects[k];
    if (T.family == "pqr" || T.family == "pqr-comm") {
      auto diag = diag_element(T.family, T.levels[k]);
      row.diagrank = r_rank(T.family, T.levels[k], diag);
    }
    rows.push_back(row);
  }
  return rows;
}

} // namespace separative
