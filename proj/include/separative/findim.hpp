#pragma once

// Finite-dimensional algebras given by structure constants: products,
// subspace products, the lower filtration A_(n), the derived series A^(n),
// nilpotency and solvability, identity satisfaction, quotients, and
// evaluation of free-algebra polynomials.

#include "separative/linalg.hpp"
#include "separative/polynomial.hpp"

#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace separative {

template <class F> class StructAlgebra {
public:
  using Scalar = typename F::Scalar;
  using Element = std::vector<Scalar>;
  using SparseVec = std::vector<std::pair<unsigned, Scalar>>;

  StructAlgebra(F field, std::vector<std::string> labels)
      : field_(std::move(field)), labels_(std::move(labels)),
        gamma_(labels_.size() * labels_.size()) {}

  const F &field() const { return field_; }
  unsigned dim() const { return static_cast<unsigned>(labels_.size()); }
  const std::vector<std::string> &basis_labels() const { return labels_; }

  int label_index(const std::string &lbl) const {
    for (unsigned i = 0; i < labels_.size(); ++i)
      if (labels_[i] == lbl) return static_cast<int>(i);
    return -1;
  }

  /// Sets e_i * e_j (unset pairs multiply to zero).
  void set_product(unsigned i, unsigned j, SparseVec value) {
    check_index(i);
    check_index(j);
    for (auto &[k, c] : value) check_index(k);
    gamma_[i * dim() + j] = std::move(value);
  }
  void set_product_dense(unsigned i, unsigned j, const Element &value) {
    SparseVec sv;
    for (unsigned k = 0; k < value.size(); ++k)
      if (!F::is_zero(value[k])) sv.emplace_back(k, value[k]);
    set_product(i, j, std::move(sv));
  }
  const SparseVec &product_of_basis(unsigned i, unsigned j) const {
    return gamma_[i * dim() + j];
  }

  Element zero_element() const { return Element(dim(), field_.zero()); }
  Element basis_element(unsigned i) const {
    check_index(i);
    Element e = zero_element();
    e[i] = field_.one();
    return e;
  }
  bool is_zero_element(const Element &a) const {
    for (auto &c : a)
      if (!F::is_zero(c)) return false;
    return true;
  }

  /// Bilinear extension of the structure constants.
  Element multiply(const Element &a, const Element &b) const {
    if (a.size() != dim() || b.size() != dim())
      throw std::invalid_argument("StructAlgebra: element dimension mismatch");
    Element out = zero_element();
    for (unsigned i = 0; i < dim(); ++i) {
      if (F::is_zero(a[i])) continue;
      for (unsigned j = 0; j < dim(); ++j) {
        if (F::is_zero(b[j])) continue;
        const SparseVec &g = gamma_[i * dim() + j];
        if (g.empty()) continue;
        Scalar c = a[i] * b[j];
        for (auto &[k, v] : g) out[k] += c * v;
      }
    }
    return out;
  }

  Element add(const Element &a, const Element &b) const {
    Element out = a;
    for (unsigned i = 0; i < dim(); ++i) out[i] += b[i];
    return out;
  }
  Element scale(const Scalar &c, const Element &a) const {
    Element out = a;
    for (auto &v : out) v = c * v;
    return out;
  }

  std::string element_str(const Element &a) const {
    std::string s;
    for (unsigned i = 0; i < dim(); ++i) {
      if (F::is_zero(a[i])) continue;
      if (!s.empty()) s += " + ";
      if (a[i] == field_.one())
        s += labels_[i];
      else
        s += field_.to_string(a[i]) + "*" + labels_[i];
    }
    return s.empty() ? "0" : s;
  }

  friend bool operator==(const StructAlgebra &a, const StructAlgebra &b) {
    if (!(a.field_ == b.field_) || a.labels_ != b.labels_) return false;
    for (size_t i = 0; i < a.gamma_.size(); ++i) {
      std::map<unsigned, Scalar> ma, mb;
      for (auto &[k, c] : a.gamma_[i])
        if (!F::is_zero(c)) ma[k] = c;
      for (auto &[k, c] : b.gamma_[i])
        if (!F::is_zero(c)) mb[k] = c;
      if (ma != mb) return false;
    }
    return true;
  }
  friend bool operator!=(const StructAlgebra &a, const StructAlgebra &b) { return !(a == b); }

private:
  void check_index(unsigned i) const {
    if (i >= dim()) throw std::invalid_argument("StructAlgebra: basis index out of range");
  }

  F field_;
  std::vector<std::string> labels_;
  std::vector<SparseVec> gamma_;
};

// ---------------------------------------------------------------------------
// subspace operations

/// The subspace spanned by all products b*c over basis pairs of B and C.
template <class F>
Subspace<F> subspace_product(const StructAlgebra<F> &A, const Subspace<F> &B,
                             const Subspace<F> &C) {
  if (B.parent_dim() != A.dim() || C.parent_dim() != A.dim())
    throw std::invalid_argument("subspace_product: subspace of a different algebra");
  Subspace<F> out(A.field(), A.dim());
  for (auto &b : B.basis())
    for (auto &c : C.basis()) out.add(A.multiply(b, c));
  return out;
}

/// The chain A_(1), ..., A_(nmax) of the lower filtration
///   A_(1) = A,  A_(n+1) = sum_{0<m<n+1} A_(m) A_(n+1-m).
template <class F>
std::vector<Subspace<F>> filtration_chain(const StructAlgebra<F> &A, unsigned nmax) {
  std::vector<Subspace<F>> chain;
  chain.push_back(Subspace<F>::whole(A.field(), A.dim()));
  for (unsigned n = 2; n <= nmax; ++n) {
    Subspace<F> next(A.field(), A.dim());
    for (unsigned m = 1; m < n; ++m) {
      Subspace<F> prod = subspace_product(A, chain[m - 1], chain[n - m - 1]);
      for (auto &row : prod.basis()) next.add(row);
    }
    chain.push_back(std::move(next));
  }
  return chain;
}

template <class F> Subspace<F> lower_filtration(const StructAlgebra<F> &A, unsigned n) {
  if (n < 1) throw std::invalid_argument("lower_filtration: n must be positive");
  return filtration_chain(A, n).back();
}

struct NilpotencyResult {
  bool nilpotent = false;
  std::optional<unsigned> index; // least n with A_(n) = {0}
};

/// Decides nilpotency by running the filtration until it stabilizes
/// (descending chains in a finite-dimensional space stabilize within
/// dim + 1 steps).
template <class F> NilpotencyResult is_nilpotent(const StructAlgebra<F> &A) {
  Subspace<F> cur = Subspace<F>::whole(A.field(), A.dim());
  std::vector<Subspace<F>> chain{cur};
  unsigned n = 1;
  while (true) {
    if (cur.is_zero()) return {true, n};
    Subspace<F> next(A.field(), A.dim());
    for (unsigned m = 1; m <= n; ++m) {
      Subspace<F> prod = subspace_product(A, chain[m - 1], chain[n - m]);
      for (auto &row : prod.basis()) next.add(row);
    }
    if (next == cur) return {false, std::nullopt}; // stabilized above zero
    chain.push_back(next);
    cur = std::move(next);
    ++n;
  }
}

/// The chain A^(0), ..., A^(nmax) of the derived series
///   A^(0) = A,  A^(n+1) = A^(n) A^(n).
template <class F>
std::vector<Subspace<F>> derived_chain(const StructAlgebra<F> &A, unsigned nmax) {
  std::vector<Subspace<F>> chain;
  chain.push_back(Subspace<F>::whole(A.field(), A.dim()));
  for (unsigned n = 1; n <= nmax; ++n)
    chain.push_back(subspace_product(A, chain.back(), chain.back()));
  return chain;
}

template <class F> Subspace<F> derived_series(const StructAlgebra<F> &A, unsigned n) {
  return derived_chain(A, n).back();
}

struct SolvabilityResult {
  bool solvable = false;
  std::optional<unsigned> derived_length; // least n with A^(n) = {0}
};

template <class F> SolvabilityResult is_solvable(const StructAlgebra<F> &A) {
  Subspace<F> cur = Subspace<F>::whole(A.field(), A.dim());
  unsigned n = 0;
  while (true) {
    if (cur.is_zero()) return {true, n};
    Subspace<F> next = subspace_product(A, cur, cur);
    if (next == cur) return {false, std::nullopt};
    cur = std::move(next);
    ++n;
  }
}

template <class F> bool is_ideal(const StructAlgebra<F> &A, const Subspace<F> &I) {
  Subspace<F> whole = Subspace<F>::whole(A.field(), A.dim());
  return I.contains(subspace_product(A, whole, I)) &&
         I.contains(subspace_product(A, I, whole));
}

// ---------------------------------------------------------------------------
// evaluation

template <class F>
typename StructAlgebra<F>::Element
evaluate_monomial(const Monomial &w, const StructAlgebra<F> &A,
                  const std::map<Indeterminate, typename StructAlgebra<F>::Element> &assignment,
                  std::map<const void *, typename StructAlgebra<F>::Element> *memo = nullptr) {
  using Element = typename StructAlgebra<F>::Element;
  if (memo) {
    auto it = memo->find(w.id());
    if (it != memo->end()) return it->second;
  }
  Element out = A.zero_element();
  if (w.is_leaf()) {
    auto it = assignment.find(w.leaf());
    if (it == assignment.end())
      throw std::invalid_argument("evaluate: unassigned variable " + w.leaf().name());
    out = it->second;
  } else {
    out = A.multiply(evaluate_monomial(w.left(), A, assignment, memo),
                     evaluate_monomial(w.right(), A, assignment, memo));
  }
  if (memo) memo->emplace(w.id(), out);
  return out;
}

/// Structural evaluation of f in A, replacing the formal product by the
/// algebra multiplication.
template <class F>
typename StructAlgebra<F>::Element
evaluate(const Polynomial<F> &f, const StructAlgebra<F> &A,
         const std::map<Indeterminate, typename StructAlgebra<F>::Element> &assignment) {
  if (!(f.field() == A.field()))
    throw std::invalid_argument("evaluate: polynomial and algebra fields differ");
  std::map<const void *, typename StructAlgebra<F>::Element> memo;
  auto out = A.zero_element();
  for (auto &[w, c] : f.terms()) {
    auto v = evaluate_monomial(w, A, assignment, &memo);
    for (unsigned i = 0; i < A.dim(); ++i) out[i] += c * v[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// identity satisfaction

struct SatisfiesOptions {
  unsigned long long exhaustive_bound = 2'000'000; // max tuples for brute force
  unsigned degree_cap = kDefaultDegreeCap;
};

namespace detail {
/// Checks that g vanishes for every assignment of basis elements to its
/// variables.
template <class F>
bool vanishes_on_basis_tuples(const StructAlgebra<F> &A, const Polynomial<F> &g) {
  std::vector<Indeterminate> vars(g.variables().begin(), g.variables().end());
  std::map<Indeterminate, typename StructAlgebra<F>::Element> assign;
  std::vector<unsigned> idx(vars.size(), 0);
  if (A.dim() == 0) return true;
  while (true) {
    for (size_t k = 0; k < vars.size(); ++k) assign[vars[k]] = A.basis_element(idx[k]);
    if (!A.is_zero_element(evaluate(g, A, assign))) return false;
    size_t k = 0;
    while (k < vars.size()) {
      if (++idx[k] < A.dim()) break;
      idx[k] = 0;
      ++k;
    }
    if (k == vars.size()) return true;
    if (vars.empty()) return true;
  }
}

/// Enumerates all field element tuples (PrimeField only).
template <class F>
bool vanishes_exhaustively(const StructAlgebra<F> &A, const Polynomial<F> &g,
                           unsigned long long bound) {
  long long p = A.field().characteristic();
  std::vector<Indeterminate> vars(g.variables().begin(), g.variables().end());
  unsigned long long coords = static_cast<unsigned long long>(A.dim()) * vars.size();
  unsigned long long total = 1;
  for (unsigned long long i = 0; i < coords; ++i) {
    if (total > bound) throw DomainError("satisfies_identity: exhaustive check over " +
                                         A.field().name() + " exceeds the tuple bound");
    total *= static_cast<unsigned long long>(p);
  }
  if (total > bound)
    throw DomainError("satisfies_identity: exhaustive check over " + A.field().name() +
                      " exceeds the tuple bound");
  std::vector<unsigned> digits(coords, 0);
  std::map<Indeterminate, typename StructAlgebra<F>::Element> assign;
  while (true) {
    unsigned long long pos = 0;
    for (size_t k = 0; k < vars.size(); ++k) {
      auto e = A.zero_element();
      for (unsigned i = 0; i < A.dim(); ++i)
        e[i] = A.field().from_integer(static_cast<long long>(digits[pos++]));
      assign[vars[k]] = e;
    }
    if (!A.is_zero_element(evaluate(g, A, assign))) return false;
    size_t k = 0;
    while (k < digits.size()) {
      if (++digits[k] < static_cast<unsigned>(p)) break;
      digits[k] = 0;
      ++k;
    }
    if (k == digits.size()) return true;
    if (digits.empty()) return true;
  }
}
} // namespace detail

/// Decides whether f vanishes under every substitution of elements of A.
///
/// Strategy ladder: all polarization components of f (including f itself)
/// are evaluated on basis tuples, which suffices for a positive answer over
/// any field; a failing component disproves f when the characteristic is 0
/// or exceeds every variable degree; otherwise a small prime field is
/// checked exhaustively, and anything else is reported undecidable rather
/// than guessed.
template <class F>
bool satisfies_identity(const StructAlgebra<F> &A, const Polynomial<F> &f,
                        const SatisfiesOptions &opts = {}) {
  if (f.is_zero()) return true;
  if (!is_multihomogeneous(f))
    throw std::invalid_argument(
        "satisfies_identity: only homogeneous identities are supported; the polynomial "
        "mixes multidegrees");
  Multidegree deg = multidegree_of(f);
  if (deg.total() > opts.degree_cap)
    throw DomainError("satisfies_identity: total degree " + std::to_string(deg.total()) +
                      " exceeds the degree cap " + std::to_string(opts.degree_cap));
  bool all_pass = true;
  for (auto &g : polarization_closure(f)) {
    if (!detail::vanishes_on_basis_tuples(A, g)) {
      all_pass = false;
      break;
    }
  }
  if (all_pass) return true;
  long long ch = A.field().characteristic();
  unsigned maxdeg = 0;
  for (auto &[v, c] : deg.counts()) maxdeg = std::max(maxdeg, c);
  if (ch == 0 || static_cast<unsigned long long>(ch) > maxdeg) return false;
  if constexpr (std::is_same_v<F, PrimeField>) {
    return detail::vanishes_exhaustively(A, f, opts.exhaustive_bound);
  }
  throw DomainError("satisfies_identity: no decision strategy applies");
}

// ---------------------------------------------------------------------------
// constructions

/// Strictly upper triangular k x k matrices, basis e_{ij} (i < j) with
/// e_{ij} e_{jl} = e_{il}. Associative and nilpotent.
template <class F> StructAlgebra<F> strict_upper_triangular(unsigned k, F field) {
  std::vector<std::string> labels;
  std::map<std::pair<unsigned, unsigned>, unsigned> index;
  for (unsigned i = 1; i <= k; ++i)
    for (unsigned j = i + 1; j <= k; ++j) {
      index[{i, j}] = static_cast<unsigned>(labels.size());
      labels.push_back("e" + std::to_string(i) + "_" + std::to_string(j));
    }
  StructAlgebra<F> A(field, labels);
  for (auto &[ij, a] : index)
    for (auto &[kl, b] : index)
      if (ij.second == kl.first)
        A.set_product(a, b, {{index.at({ij.first, kl.second}), field.one()}});
  return A;
}

/// Full k x k matrix algebra, basis e_{ij}.
template <class F> StructAlgebra<F> full_matrix(unsigned k, F field) {
  std::vector<std::string> labels;
  std::map<std::pair<unsigned, unsigned>, unsigned> index;
  for (unsigned i = 1; i <= k; ++i)
    for (unsigned j = 1; j <= k; ++j) {
      index[{i, j}] = static_cast<unsigned>(labels.size());
      labels.push_back("e" + std::to_string(i) + "_" + std::to_string(j));
    }
  StructAlgebra<F> A(field, labels);
  for (auto &[ij, a] : index)
    for (auto &[kl, b] : index)
      if (ij.second == kl.first)
        A.set_product(a, b, {{index.at({ij.first, kl.second}), field.one()}});
  return A;
}

/// Same space as A with the bracket product ab - ba.
template <class F> StructAlgebra<F> lie_from_associative(const StructAlgebra<F> &A) {
  StructAlgebra<F> L(A.field(), A.basis_labels());
  for (unsigned i = 0; i < A.dim(); ++i)
    for (unsigned j = 0; j < A.dim(); ++j) {
      auto ab = A.multiply(A.basis_element(i), A.basis_element(j));
      auto ba = A.multiply(A.basis_element(j), A.basis_element(i));
      for (unsigned t = 0; t < A.dim(); ++t) ab[t] -= ba[t];
      L.set_product_dense(i, j, ab);
    }
  return L;
}

/// Same space as A with the product (ab + ba)/2; requires char != 2.
template <class F> StructAlgebra<F> jordan_from_associative(const StructAlgebra<F> &A) {
  if (A.field().characteristic() == 2)
    throw DomainError("jordan_from_associative: not defined in characteristic 2");
  auto half = A.field().one() / A.field().from_integer(2);
  StructAlgebra<F> J(A.field(), A.basis_labels());
  for (unsigned i = 0; i < A.dim(); ++i)
    for (unsigned j = 0; j < A.dim(); ++j) {
      auto ab = A.multiply(A.basis_element(i), A.basis_element(j));
      auto ba = A.multiply(A.basis_element(j), A.basis_element(i));
      for (unsigned t = 0; t < A.dim(); ++t) ab[t] = half * (ab[t] + ba[t]);
      J.set_product_dense(i, j, ab);
    }
  return J;
}

template <class F> StructAlgebra<F> zero_mult(unsigned dim, F field) {
  std::vector<std::string> labels;
  for (unsigned i = 1; i <= dim; ++i) labels.push_back("e" + std::to_string(i));
  return StructAlgebra<F>(field, labels);
}

/// The subalgebra spanned by `vectors`, which must be closed under the
/// product; returns it with structure constants in the given basis.
template <class F>
StructAlgebra<F> subalgebra_from_basis(const StructAlgebra<F> &A,
                                       const std::vector<typename StructAlgebra<F>::Element> &vectors,
                                       const std::vector<std::string> &labels) {
  if (vectors.size() != labels.size())
    throw std::invalid_argument("subalgebra_from_basis: labels/vectors size mismatch");
  Subspace<F> span = Subspace<F>::span_of(A.field(), A.dim(), vectors);
  if (span.dim() != vectors.size())
    throw std::invalid_argument("subalgebra_from_basis: vectors are linearly dependent");
  StructAlgebra<F> S(A.field(), labels);
  for (unsigned i = 0; i < vectors.size(); ++i)
    for (unsigned j = 0; j < vectors.size(); ++j) {
      auto p = A.multiply(vectors[i], vectors[j]);
      auto coeffs = express_in_span(A.field(), A.dim(), vectors, p);
      if (!coeffs)
        throw DomainError("subalgebra_from_basis: span is not closed under the product");
      S.set_product_dense(i, j, *coeffs);
    }
  return S;
}

/// Basis of the subalgebra generated by `gens` (iterated span-and-multiply
/// until stable), as canonical row vectors.
template <class F>
std::vector<typename StructAlgebra<F>::Element>
subalgebra_closure(const StructAlgebra<F> &A,
                   const std::vector<typename StructAlgebra<F>::Element> &gens) {
  Subspace<F> span = Subspace<F>::span_of(A.field(), A.dim(), gens);
  while (true) {
    Subspace<F> bigger = span + subspace_product(A, span, span);
    if (bigger == span) break;
    span = std::move(bigger);
  }
  return span.basis();
}

/// Quotient of A by an ideal, with basis the classes of the non-pivot
/// coordinates of the ideal's canonical basis.
template <class F>
StructAlgebra<F> quotient(const StructAlgebra<F> &A, const Subspace<F> &ideal) {
  if (!is_ideal(A, ideal)) throw std::invalid_argument("quotient: subspace is not an ideal");
  std::vector<unsigned> free_coords;
  {
    std::vector<bool> pivot(A.dim(), false);
    for (auto p : ideal.pivots()) pivot[p] = true;
    for (unsigned i = 0; i < A.dim(); ++i)
      if (!pivot[i]) free_coords.push_back(i);
  }
  std::vector<std::string> labels;
  for (auto i : free_coords) labels.push_back(A.basis_labels()[i]);
  StructAlgebra<F> Q(A.field(), labels);
  for (unsigned a = 0; a < free_coords.size(); ++a)
    for (unsigned b = 0; b < free_coords.size(); ++b) {
      auto p = A.multiply(A.basis_element(free_coords[a]), A.basis_element(free_coords[b]));
      ideal.reduce(p); // residue is supported on the free coordinates
      typename StructAlgebra<F>::Element img(free_coords.size(), A.field().zero());
      for (unsigned t = 0; t < free_coords.size(); ++t) img[t] = p[free_coords[t]];
      Q.set_product_dense(a, b, img);
    }
  return Q;
}

// ---------------------------------------------------------------------------
// algebra file format
//
//   field Q | field GF(p)
//   dim n
//   basis lbl1 ... lbln
//   lbl_i * lbl_j = c1*lbl_k1 + c2*lbl_k2 ...
//
// Pairs without a product line multiply to zero.

template <class F> std::string to_file_string(const StructAlgebra<F> &A) {
  std::ostringstream os;
  os << "field " << A.field().name() << "\n";
  os << "dim " << A.dim() << "\n";
  os << "basis";
  for (auto &l : A.basis_labels()) os << " " << l;
  os << "\n";
  for (unsigned i = 0; i < A.dim(); ++i)
    for (unsigned j = 0; j < A.dim(); ++j) {
      const auto &g = A.product_of_basis(i, j);
      if (g.empty()) continue;
      os << A.basis_labels()[i] << " * " << A.basis_labels()[j] << " =";
      bool first = true;
      for (auto &[k, c] : g) {
        if (first) {
          os << " ";
          first = false;
        } else {
          os << " + ";
        }
        if (c == A.field().one())
          os << A.basis_labels()[k];
        else
          os << A.field().to_string(c) << "*" << A.basis_labels()[k];
      }
      os << "\n";
    }
  return os.str();
}

namespace detail {
inline std::vector<std::string> split_ws(const std::string &line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

/// Parses "c*lbl" or "lbl" or "a/b*lbl"; returns (coeff-string, label).
inline std::pair<std::string, std::string> split_coeff_label(const std::string &term) {
  auto star = term.find('*');
  if (star == std::string::npos) return {"1", term};
  return {term.substr(0, star), term.substr(star + 1)};
}

template <class F> typename F::Scalar parse_coeff(const F &field, const std::string &s) {
  bool neg = false;
  size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
    neg = s[i] == '-';
    ++i;
  }
  auto slash = s.find('/', i);
  long long num = std::stoll(s.substr(i, slash == std::string::npos ? std::string::npos : slash - i));
  long long den = slash == std::string::npos ? 1 : std::stoll(s.substr(slash + 1));
  auto c = field.from_fraction(num, den);
  return neg ? -c : c;
}
} // namespace detail

/// Field header "field Q" / "field GF(p)": returns "Q" or the prime.
inline std::optional<long long> parse_field_header(const std::string &token) {
  if (token == "Q") return std::nullopt;
  std::string t = token;
  if (t.rfind("GF", 0) == 0) {
    t = t.substr(2);
    if (!t.empty() && t.front() == '(') t = t.substr(1);
    if (!t.empty() && t.back() == ')') t.pop_back();
    return std::stoll(t);
  }
  throw ParseError("unknown field '" + token + "' (expected Q or GF(p))");
}

template <class F>
StructAlgebra<F> parse_algebra(const F &field, const std::string &text) {
  std::istringstream is(text);
  std::string line;
  std::optional<unsigned> dim;
  std::vector<std::string> labels;
  std::vector<std::tuple<std::string, std::string, std::string>> product_lines;
  bool field_seen = false;
  while (std::getline(is, line)) {
    auto toks = detail::split_ws(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (toks[0] == "field") {
      if (toks.size() != 2) throw ParseError("algebra: malformed field line");
      auto p = parse_field_header(toks[1]);
      bool is_q = !p.has_value();
      if (is_q != (field.characteristic() == 0) ||
          (p && *p != field.characteristic()))
        throw ParseError("algebra: file field " + toks[1] + " does not match " + field.name());
      field_seen = true;
    } else if (toks[0] == "dim") {
      if (toks.size() != 2) throw ParseError("algebra: malformed dim line");
      dim = static_cast<unsigned>(std::stoul(toks[1]));
    } else if (toks[0] == "basis") {
      labels.assign(toks.begin() + 1, toks.end());
    } else {
      // product line: lbl * lbl = rhs
      auto eq = line.find('=');
      if (eq == std::string::npos) throw ParseError("algebra: expected '=' in product line: " + line);
      auto lhs = detail::split_ws(line.substr(0, eq));
      if (lhs.size() != 3 || lhs[1] != "*")
        throw ParseError("algebra: malformed product left-hand side: " + line);
      product_lines.emplace_back(lhs[0], lhs[2], line.substr(eq + 1));
    }
  }
  if (!field_seen) throw ParseError("algebra: missing field line");
  if (!dim) throw ParseError("algebra: missing dim line");
  if (labels.size() != *dim) throw ParseError("algebra: basis size differs from dim");
  StructAlgebra<F> A(field, labels);
  for (auto &[li, lj, rhs] : product_lines) {
    int i = A.label_index(li), j = A.label_index(lj);
    if (i < 0 || j < 0) throw ParseError("algebra: unknown basis label in product line");
    auto e = A.zero_element();
    // rhs: terms separated by + / - signs
    std::string term;
    std::vector<std::pair<std::string, bool>> terms; // (term, negated)
    bool neg = false;
    auto flush = [&]() {
      std::string t;
      for (char ch : term)
        if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
      if (!t.empty()) terms.emplace_back(t, neg);
      term.clear();
    };
    for (char ch : rhs) {
      if (ch == '+') {
        flush();
        neg = false;
      } else if (ch == '-') {
        flush();
        neg = true;
      } else {
        term += ch;
      }
    }
    flush();
    for (auto &[t, tn] : terms) {
      if (t == "0") continue;
      auto [cs, lbl] = detail::split_coeff_label(t);
      int k = A.label_index(lbl);
      if (k < 0) throw ParseError("algebra: unknown basis label '" + lbl + "'");
      auto c = detail::parse_coeff(field, cs);
      if (tn) c = -c;
      e[static_cast<unsigned>(k)] += c;
    }
    A.set_product_dense(static_cast<unsigned>(i), static_cast<unsigned>(j), e);
  }
  return A;
}

} // namespace separative
