#pragma once

// Variety presentations, degree-bounded T-ideal components, separativity
// witnesses with certificate verification, and the separation rewriters.
//
// Congruence modulo the homogeneous identities of a presentation is
// realized as exact linear algebra inside one multidegree component: the
// component's basis is the span of all single-context instances of the
// polarization closure of the defining identities. Over characteristic 0
// this span is the full component of the T-ideal; over small prime fields
// it is a sound under-approximation (see README).

#include "separative/findim.hpp"
#include "separative/linalg.hpp"
#include "separative/polynomial.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace separative {

/// Which side of the shape the extra factor z sits on: Left is z*u,
/// Right is u*z.
enum class ZSide { Left, Right };

inline std::string to_string(ZSide s) { return s == ZSide::Left ? "L" : "R"; }

inline Indeterminate z_var() { return Indeterminate::named("z"); }
inline Indeterminate z1_var() { return Indeterminate::named("z1"); }
inline Indeterminate z2_var() { return Indeterminate::named("z2"); }

/// Certificate data for a [1,1+d]-separative variety: for every bracketing
/// u of the ordered string x_1...x_{d+2} and each side, a rewrite target
/// for u*z (resp. z*u) all of whose monomials are in split form: one
/// top-level factor is a bracketed product, in some order, of a proper
/// nonempty subset of x_1,...,x_{d+2}, and the other contains z and exactly
/// the remaining x's.
///
/// When split_z is set the certificates are stated for z = z1*z2 instead,
/// rewriting u*(z1 z2) / (z1 z2)*u; the rewriter then splits the
/// z-operand, which always has length >= 2 at its call sites. This covers
/// varieties (such as the one defined by (x1 x2)(x3 x4) = 0) whose
/// rewrites only hold when z is itself a product.
template <class F> struct SeparativityWitness {
  unsigned d = 0;
  bool split_z = false;
  std::map<std::pair<Monomial, ZSide>, Polynomial<F>> certificates;
};

template <class F> class TIdealComponent;

template <class F> class VarietyPresentation {
public:
  VarietyPresentation(std::string name, F field, std::vector<Polynomial<F>> identities,
                      std::optional<SeparativityWitness<F>> witness = std::nullopt)
      : name_(std::move(name)), field_(std::move(field)), identities_(std::move(identities)),
        witness_(std::move(witness)), cache_(std::make_shared<ComponentCache>()) {
    for (auto &f : identities_) {
      if (f.is_zero()) continue;
      if (!is_multihomogeneous(f))
        throw std::invalid_argument(
            "VarietyPresentation '" + name_ +
            "': only homogeneous identities are supported, but an identity mixes "
            "multidegrees (" + to_string(f) + ")");
    }
    for (auto &f : identities_)
      for (auto &g : polarization_closure(f)) expanded_.push_back(g);
  }

  const std::string &name() const { return name_; }
  const F &field() const { return field_; }
  const std::vector<Polynomial<F>> &defining_identities() const { return identities_; }
  const std::vector<Polynomial<F>> &expanded_identities() const { return expanded_; }
  const std::optional<SeparativityWitness<F>> &witness() const { return witness_; }

  VarietyPresentation with_witness(SeparativityWitness<F> w) const {
    return VarietyPresentation(name_, field_, identities_, std::move(w));
  }

  /// Internal memo for computed T-ideal components; shared across copies.
  struct ComponentCache {
    std::mutex mu;
    std::map<Multidegree, std::shared_ptr<const TIdealComponent<F>>> components;
  };
  const std::shared_ptr<ComponentCache> &component_cache() const { return cache_; }

private:
  std::string name_;
  F field_;
  std::vector<Polynomial<F>> identities_;
  std::optional<SeparativityWitness<F>> witness_;
  std::vector<Polynomial<F>> expanded_;
  std::shared_ptr<ComponentCache> cache_;
};

// ---------------------------------------------------------------------------
// T-ideal components

/// The span, within the multihomogeneous component of one multidegree, of
/// all substitution-in-context instances of a presentation's identities.
template <class F> class TIdealComponent {
public:
  TIdealComponent(F field, Multidegree degree)
      : degree_(std::move(degree)), monomials_(monomials_of_multidegree(degree_)),
        span_(field, static_cast<unsigned>(monomials_.size())) {
    for (unsigned i = 0; i < monomials_.size(); ++i) index_.emplace(monomials_[i], i);
  }

  const Multidegree &degree() const { return degree_; }
  const std::vector<Monomial> &monomial_basis() const { return monomials_; }
  unsigned dim() const { return span_.rank(); }

  std::vector<typename F::Scalar> vectorize(const Polynomial<F> &f) const {
    std::vector<typename F::Scalar> v(monomials_.size(), f.field().zero());
    for (auto &[w, c] : f.terms()) {
      auto it = index_.find(w);
      if (it == index_.end())
        throw std::invalid_argument("TIdealComponent: monomial outside the component (" +
                                    to_string(w) + ")");
      v[it->second] = c;
    }
    return v;
  }

  bool add(const Polynomial<F> &f) { return span_.add(vectorize(f)); }
  bool contains(const Polynomial<F> &f) const { return span_.contains(vectorize(f)); }

  std::vector<Polynomial<F>> basis_polys(const F &field) const {
    std::vector<Polynomial<F>> out;
    for (auto &row : span_.rows()) {
      Polynomial<F> p(field);
      for (unsigned j = 0; j < monomials_.size(); ++j) p.add_term(monomials_[j], row[j]);
      out.push_back(std::move(p));
    }
    return out;
  }

  const RowSpan<F> &span() const { return span_; }

private:
  Multidegree degree_;
  std::vector<Monomial> monomials_;
  std::map<Monomial, unsigned, MonomialLess> index_;
  RowSpan<F> span_;
};

namespace detail {
/// Enumerates every instance c(sigma(g)) of multidegree D, where sigma
/// substitutes monomials over D's variables for g's variables and c is a
/// one-placeholder context, feeding each into `emit`.
template <class F>
void enumerate_instances(const Polynomial<F> &g, const Multidegree &D,
                         const std::function<void(const Polynomial<F> &)> &emit) {
  if (g.is_zero()) return;
  Multidegree gdeg = multidegree_of(g);
  std::vector<Indeterminate> gvars;
  std::vector<unsigned> gcounts;
  for (auto &[v, c] : gdeg.counts()) {
    gvars.push_back(v);
    gcounts.push_back(c);
  }
  std::map<Multidegree, std::vector<Monomial>> mono_cache;
  auto monomials_of = [&](const Multidegree &d) -> const std::vector<Monomial> & {
    auto it = mono_cache.find(d);
    if (it != mono_cache.end()) return it->second;
    return mono_cache.emplace(d, monomials_of_multidegree(d)).first->second;
  };
  // enumerate submultidegrees mu of `room` with at least one variable
  auto each_submultidegree = [&](const Multidegree &room,
                                 const std::function<void(const Multidegree &)> &fn) {
    std::vector<Indeterminate> vars;
    std::vector<unsigned> caps;
    for (auto &[v, c] : room.counts()) {
      vars.push_back(v);
      caps.push_back(c);
    }
    Multidegree mu;
    std::function<void(size_t)> rec = [&](size_t i) {
      if (i == vars.size()) {
        if (mu.total() >= 1) fn(mu);
        return;
      }
      for (unsigned c = 0; c <= caps[i]; ++c) {
        mu.set(vars[i], c);
        rec(i + 1);
      }
      mu.set(vars[i], 0);
    };
    rec(0);
  };

  std::map<Indeterminate, Monomial> sigma;
  std::function<void(size_t, const Multidegree &)> assign = [&](size_t i, const Multidegree &room) {
    if (i == gvars.size()) {
      Polynomial<F> inst = substitute_monomials(g, sigma);
      // contexts over the remaining multidegree with one placeholder
      for (const auto &c : monomials_of_multidegree(room, /*with_placeholder=*/true))
        emit(apply_context(c, inst));
      return;
    }
    unsigned mult = gcounts[i];
    each_submultidegree(room, [&](const Multidegree &mu) {
      Multidegree used = mu.scaled(mult);
      if (!room.contains(used)) return;
      Multidegree rest = room.minus(used);
      for (const auto &m : monomials_of(mu)) {
        sigma[gvars[i]] = m;
        assign(i + 1, rest);
      }
      sigma.erase(gvars[i]);
    });
  };
  assign(0, D);
}
} // namespace detail

/// Computes the T-ideal component at multidegree D by exhaustive
/// enumeration of identity instances in context followed by row reduction.
template <class F>
TIdealComponent<F> t_ideal_component(const VarietyPresentation<F> &P, const Multidegree &D,
                                     unsigned degree_cap = kDefaultDegreeCap) {
  if (D.total() > degree_cap)
    throw DomainError("t_ideal_component: total degree " + std::to_string(D.total()) +
                      " exceeds the degree cap " + std::to_string(degree_cap));
  TIdealComponent<F> comp(P.field(), D);
  for (auto &g : P.expanded_identities()) {
    if (multidegree_of(g).total() > D.total()) continue;
    detail::enumerate_instances<F>(g, D, [&](const Polynomial<F> &inst) { comp.add(inst); });
  }
  return comp;
}

template <class F>
std::shared_ptr<const TIdealComponent<F>>
t_ideal_component_cached(const VarietyPresentation<F> &P, const Multidegree &D,
                         unsigned degree_cap = kDefaultDegreeCap) {
  auto cache = P.component_cache();
  {
    std::lock_guard<std::mutex> lock(cache->mu);
    auto it = cache->components.find(D);
    if (it != cache->components.end()) return it->second;
  }
  auto comp = std::make_shared<const TIdealComponent<F>>(t_ideal_component(P, D, degree_cap));
  std::lock_guard<std::mutex> lock(cache->mu);
  return cache->components.emplace(D, comp).first->second;
}

/// f and g are congruent modulo the homogeneous identities of P when every
/// multidegree component of f - g lies in the corresponding T-ideal
/// component.
template <class F>
bool is_congruent(const Polynomial<F> &f, const Polynomial<F> &g,
                  const VarietyPresentation<F> &P, unsigned degree_cap = kDefaultDegreeCap) {
  Polynomial<F> h = f - g;
  if (h.is_zero()) return true;
  for (auto &[D, comp] : multidegree_components(h)) {
    auto ideal = t_ideal_component_cached(P, D, degree_cap);
    if (!ideal->contains(comp)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// witness verification

template <class F> struct WitnessReportEntry {
  Monomial shape;
  ZSide side = ZSide::Right;
  bool split_form_ok = false;
  bool congruence_ok = false;
  std::string message;
};

template <class F> struct WitnessReport {
  std::vector<WitnessReportEntry<F>> entries;
  bool ok() const {
    for (auto &e : entries)
      if (!e.split_form_ok || !e.congruence_ok) return false;
    return !entries.empty();
  }
};

namespace detail {
/// Split-form check for one certificate monomial: exactly one top-level
/// factor contains the z-variables, and that factor has length >= 2 (so
/// the other one is a product of a proper nonempty subset of the x's).
inline bool split_form_monomial(const Monomial &t, const std::set<Indeterminate> &zvars) {
  if (t.is_leaf()) return false;
  auto contains_z = [&](const Monomial &m) {
    std::vector<Indeterminate> leaves;
    collect_leaves(m, leaves);
    for (auto v : leaves)
      if (zvars.count(v)) return true;
    return false;
  };
  bool lz = contains_z(t.left()), rz = contains_z(t.right());
  if (lz == rz) return false;
  // the z-free factor must be a *proper* subset of the x's, so the z
  // factor carries all z-variables plus at least one x
  const Monomial &zfac = lz ? t.left() : t.right();
  return zfac.length() > zvars.size();
}
} // namespace detail

/// The monomial rewritten by the certificate keyed (shape, side): u*z,
/// z*u, or their z1 z2 refinements for split-z witnesses.
template <class F>
Monomial witness_source(const SeparativityWitness<F> &w, const Monomial &shape, ZSide side) {
  Monomial z = w.split_z ? Monomial(Monomial(z1_var()), Monomial(z2_var())) : Monomial(z_var());
  return side == ZSide::Right ? Monomial(shape, z) : Monomial(z, shape);
}

/// Checks, for every bracketing u of x_1...x_{d+2} and both sides, that a
/// certificate exists, that its split-form invariant holds syntactically,
/// and that the rewrite is a congruence modulo the identities of P.
template <class F>
WitnessReport<F> verify_witness(const VarietyPresentation<F> &P,
                                unsigned degree_cap = kDefaultDegreeCap) {
  if (!P.witness()) throw std::invalid_argument("verify_witness: presentation has no witness");
  const auto &w = *P.witness();
  std::vector<Indeterminate> xs;
  for (unsigned i = 1; i <= w.d + 2; ++i) xs.push_back(Indeterminate::var(i));
  std::set<Indeterminate> zvars;
  if (w.split_z) {
    zvars.insert(z1_var());
    zvars.insert(z2_var());
  } else {
    zvars.insert(z_var());
  }
  // all bracketings of the ordered string x1...x_{d+2}
  std::function<std::vector<Monomial>(unsigned, unsigned)> brack =
      [&](unsigned lo, unsigned hi) -> std::vector<Monomial> {
    std::vector<Monomial> out;
    if (hi - lo == 1) {
      out.emplace_back(xs[lo]);
      return out;
    }
    for (unsigned mid = lo + 1; mid < hi; ++mid)
      for (const auto &l : brack(lo, mid))
        for (const auto &r : brack(mid, hi)) out.emplace_back(l, r);
    return out;
  };
  WitnessReport<F> report;
  for (const auto &shape : brack(0, w.d + 2)) {
    for (ZSide side : {ZSide::Right, ZSide::Left}) {
      WitnessReportEntry<F> entry;
      entry.shape = shape;
      entry.side = side;
      auto it = w.certificates.find({shape, side});
      if (it == w.certificates.end())
        throw DomainError("verify_witness: missing certificate for shape " + to_string(shape) +
                          " side " + to_string(side));
      const Polynomial<F> &target = it->second;
      Monomial source = witness_source(w, shape, side);
      // (a) syntactic split-form and multidegree check
      entry.split_form_ok = true;
      Multidegree want = Multidegree::of_monomial(source);
      for (auto &[t, c] : target.terms()) {
        if (!(Multidegree::of_monomial(t) == want)) {
          entry.split_form_ok = false;
          entry.message = "term " + to_string(t) + " has the wrong multidegree";
          break;
        }
        if (!detail::split_form_monomial(t, zvars)) {
          entry.split_form_ok = false;
          entry.message = "term " + to_string(t) + " is not in split form";
          break;
        }
      }
      // (b) congruence check
      if (entry.split_form_ok) {
        entry.congruence_ok =
            is_congruent(Polynomial<F>(P.field(), source), target, P, degree_cap);
        if (!entry.congruence_ok)
          entry.message = "rewrite of " + to_string(source) + " is not a congruence";
      }
      report.entries.push_back(std::move(entry));
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// the Jordan witness

/// Derives the d = 1 witness for Jordan algebras: expands both sides of
/// (xy)(xx) = x(y(xx)) under x -> x2+x3+z, y -> x1, takes the multilinear
/// part in {x1,x2,x3,z} (folding commutative duplicates), checks every
/// coefficient is +-2, halves, solves for the unique z-outside monomial
/// z(x1(x2 x3)), and extends to all shape/side pairs by commutativity and
/// relabeling. Requires characteristic != 2.
template <class F> SeparativityWitness<F> derive_jordan_witness(const F &field) {
  if (field.characteristic() == 2)
    throw DomainError("derive_jordan_witness: requires characteristic != 2");
  Indeterminate x = Indeterminate::named("x"), y = Indeterminate::named("y0");
  Indeterminate x1 = Indeterminate::var(1), x2 = Indeterminate::var(2),
                x3 = Indeterminate::var(3), z = z_var();
  // (x y)(x x) - x(y(x x)); the placeholder name "y" is reserved, so the
  // identity is stated with y0
  Monomial mx(x), my(y);
  Polynomial<F> jordan =
      Polynomial<F>(field, Monomial(Monomial(mx, my), Monomial(mx, mx))) -
      Polynomial<F>(field, Monomial(mx, Monomial(my, Monomial(mx, mx))));
  std::map<Indeterminate, Polynomial<F>> sub;
  Polynomial<F> s(field, Monomial(x2));
  s.add_term(Monomial(x3), field.one());
  s.add_term(Monomial(z), field.one());
  sub.emplace(x, s);
  sub.emplace(y, Polynomial<F>(field, Monomial(x1)));
  Polynomial<F> expanded = substitute(jordan, sub);
  Polynomial<F> ml = comm_canonical(multilinear_part(expanded, {x1, x2, x3, z}));
  // every commutative class occurs with multiplicity 2
  auto two = field.from_integer(2);
  for (auto &[w, c] : ml.terms()) {
    if (!(c == two || c == -two))
      throw DomainError("derive_jordan_witness: unexpected coefficient " + field.to_string(c) +
                        " on " + to_string(w));
  }
  Polynomial<F> halved(field);
  auto half = field.one() / two;
  for (auto &[w, c] : ml.terms()) halved.add_term(w, half * c);
  // isolate the unique z-outside class
  Monomial u0 = Monomial(Monomial(x1), Monomial(Monomial(x2), Monomial(x3))); // x1 (x2 x3)
  Monomial target_class = comm_canonical(Monomial(Monomial(z), u0));
  std::vector<Monomial> outside;
  for (auto &[w, c] : halved.terms()) {
    bool z_outside = !w.is_leaf() && ((w.left().is_leaf() && w.left().leaf() == z) ||
                                      (w.right().is_leaf() && w.right().leaf() == z));
    if (z_outside) outside.push_back(w);
  }
  if (outside.size() != 1 || !(outside.front() == target_class))
    throw DomainError("derive_jordan_witness: expected the single z-outside class z(x1(x2 x3))");
  typename F::Scalar tc = halved.coeff(target_class);
  Polynomial<F> solved(field); // z(x1(x2 x3)) = solved
  for (auto &[w, c] : halved.terms()) {
    if (w == target_class) continue;
    solved.add_term(w, -(field.one() / tc) * c);
  }
  // extend to both shapes of x1 x2 x3 and both sides via relabeling
  SeparativityWitness<F> wit;
  wit.d = 1;
  std::vector<Monomial> shapes = {
      Monomial(Monomial(Monomial(x1), Monomial(x2)), Monomial(x3)), // (x1 x2) x3
      Monomial(Monomial(x1), Monomial(Monomial(x2), Monomial(x3)))  // x1 (x2 x3)
  };
  std::vector<Indeterminate> xs = {x1, x2, x3};
  for (const auto &shape : shapes) {
    // find a relabeling pi with comm_canonical(pi(u0)) == comm_canonical(shape)
    std::optional<std::map<Indeterminate, Monomial>> relabel;
    std::vector<unsigned> perm = {0, 1, 2};
    std::sort(perm.begin(), perm.end());
    do {
      std::map<Indeterminate, Monomial> pi;
      for (unsigned i = 0; i < 3; ++i) pi.emplace(xs[i], Monomial(xs[perm[i]]));
      if (comm_canonical(substitute_leaves(u0, pi)) == comm_canonical(shape)) {
        relabel = pi;
        break;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (!relabel) throw DomainError("derive_jordan_witness: no relabeling found");
    Polynomial<F> target = substitute_monomials(solved, *relabel);
    wit.certificates.emplace(std::make_pair(shape, ZSide::Left), target);
    wit.certificates.emplace(std::make_pair(shape, ZSide::Right), target);
  }
  return wit;
}

// ---------------------------------------------------------------------------
// separation rewriters

/// Rewrites monomials into combinations of separating monomials using a
/// presentation's witness. Results are memoized per monomial.
template <class F> class SeparationRewriter {
public:
  explicit SeparationRewriter(VarietyPresentation<F> P, unsigned degree_cap = kDefaultDegreeCap)
      : P_(std::move(P)), cap_(degree_cap) {
    if (!P_.witness())
      throw std::invalid_argument("SeparationRewriter: presentation '" + P_.name() +
                                  "' has no separativity witness");
  }

  const VarietyPresentation<F> &presentation() const { return P_; }

  /// A combination of [1, 1+d]-separating monomials congruent to w.
  Polynomial<F> separate_once(const Monomial &w) {
    if (w.length() <= 1)
      throw std::invalid_argument("separate_once: monomial must have length > 1");
    if (w.length() > cap_)
      throw DomainError("separate_once: length " + std::to_string(w.length()) +
                        " exceeds the degree cap " + std::to_string(cap_));
    const auto &wit = *P_.witness();
    if (is_range_separating(w, 1, 1 + wit.d)) return Polynomial<F>(P_.field(), w);
    auto it = memo_.find(w);
    if (it != memo_.end()) return it->second;
    // not separating forces min(length(w'), length(w'')) >= d+2
    const Monomial &lf = w.left(), &rf = w.right();
    bool decompose_left = lf.length() <= rf.length(); // tie -> left
    const Monomial &shorter = decompose_left ? lf : rf;
    const Monomial &other = decompose_left ? rf : lf;
    ZSide side = decompose_left ? ZSide::Right : ZSide::Left;
    Factorization fac = split_into_factors(shorter, wit.d + 2);
    std::map<Indeterminate, Monomial> slot_to_x;
    std::map<Indeterminate, Monomial> sigma;
    for (unsigned i = 0; i < wit.d + 2; ++i) {
      slot_to_x.emplace(slot_var(i + 1), Monomial(Indeterminate::var(i + 1)));
      sigma.emplace(Indeterminate::var(i + 1), fac.factors[i]);
    }
    Monomial shape = substitute_leaves(fac.shape, slot_to_x);
    auto cit = wit.certificates.find({shape, side});
    if (cit == wit.certificates.end())
      throw DomainError("separate_once: witness has no certificate for shape " +
                        to_string(shape) + " side " + to_string(side));
    if (wit.split_z) {
      // `other` has length >= d+2 >= 2 here, so it factors
      sigma.emplace(z1_var(), other.left());
      sigma.emplace(z2_var(), other.right());
    } else {
      sigma.emplace(z_var(), other);
    }
    Polynomial<F> inst = substitute_monomials(cit->second, sigma);
    Polynomial<F> out(P_.field());
    for (auto &[m, c] : inst.terms()) out += c * separate_once(m);
    memo_.emplace(w, out);
    return out;
  }

  /// A combination of [n, n+d]-separating monomials congruent to w,
  /// following the inductive scheme: separate at n-1, then rewrite the
  /// located submonomial of each monomial that is not yet far enough.
  Polynomial<F> separate_n(const Monomial &w, unsigned n) {
    if (n < 1) throw std::invalid_argument("separate_n: n must be positive");
    if (w.length() <= n)
      throw std::invalid_argument("separate_n: requires length(w) > n");
    const auto &wit = *P_.witness();
    Polynomial<F> cur = separate_once(w);
    for (unsigned stage = 2; stage <= n; ++stage) {
      Polynomial<F> next(P_.field());
      for (auto &[m, c] : cur.terms()) {
        if (is_range_separating(m, stage, stage + wit.d)) {
          next.add_term(m, c);
          continue;
        }
        // m is (stage-1)-separating: locate the first submonomial of
        // length length(m) - (stage-1) and rewrite it in context
        unsigned L = m.length() - (stage - 1);
        auto ctxs = contexts(m, L);
        if (ctxs.empty())
          throw DomainError("separate_n: monomial " + to_string(m) +
                            " lost the expected separation");
        const Context &ctx = ctxs.front();
        Polynomial<F> inner = separate_once(ctx.sub);
        next += c * apply_context(ctx.frame, inner);
      }
      cur = std::move(next);
    }
    return cur;
  }

private:
  VarietyPresentation<F> P_;
  unsigned cap_;
  std::map<Monomial, Polynomial<F>, MonomialLess> memo_;
};

template <class F>
Polynomial<F> separate_once(const Monomial &w, const VarietyPresentation<F> &P,
                            unsigned degree_cap = kDefaultDegreeCap) {
  return SeparationRewriter<F>(P, degree_cap).separate_once(w);
}

template <class F>
Polynomial<F> separate_n(const Monomial &w, unsigned n, const VarietyPresentation<F> &P,
                         unsigned degree_cap = kDefaultDegreeCap) {
  return SeparationRewriter<F>(P, degree_cap).separate_n(w, n);
}

// ---------------------------------------------------------------------------
// builtin presentations

/// Experimental: searches for flavor-A certificates of a [1,1+d] witness by
/// solving, for each shape and side, for a split-form combination congruent
/// to u*z / z*u. Returns nothing when some certificate does not exist at
/// this d. Completeness is not claimed.
template <class F>
std::optional<SeparativityWitness<F>> search_witness(const VarietyPresentation<F> &P, unsigned d,
                                                     unsigned degree_cap = kDefaultDegreeCap) {
  SeparativityWitness<F> wit;
  wit.d = d;
  std::vector<Indeterminate> xs;
  Multidegree D;
  for (unsigned i = 1; i <= d + 2; ++i) {
    xs.push_back(Indeterminate::var(i));
    D.set(Indeterminate::var(i), 1);
  }
  D.set(z_var(), 1);
  std::set<Indeterminate> zvars{z_var()};
  auto ideal = t_ideal_component_cached(P, D, degree_cap);
  std::vector<Monomial> split;
  for (const auto &t : ideal->monomial_basis())
    if (detail::split_form_monomial(t, zvars)) split.push_back(t);
  std::function<std::vector<Monomial>(unsigned, unsigned)> brack =
      [&](unsigned lo, unsigned hi) -> std::vector<Monomial> {
    std::vector<Monomial> out;
    if (hi - lo == 1) {
      out.emplace_back(xs[lo]);
      return out;
    }
    for (unsigned mid = lo + 1; mid < hi; ++mid)
      for (const auto &l : brack(lo, mid))
        for (const auto &r : brack(mid, hi)) out.emplace_back(l, r);
    return out;
  };
  // solve pi(source) in span{pi(split_i)} where pi is reduction mod the ideal
  unsigned cols = static_cast<unsigned>(ideal->monomial_basis().size());
  std::vector<std::vector<typename F::Scalar>> reduced;
  for (const auto &t : split) {
    auto v = ideal->vectorize(Polynomial<F>(P.field(), t));
    ideal->span().reduce(v);
    reduced.push_back(std::move(v));
  }
  for (const auto &shape : brack(0, d + 2)) {
    for (ZSide side : {ZSide::Right, ZSide::Left}) {
      Monomial source = side == ZSide::Right ? Monomial(shape, Monomial(z_var()))
                                             : Monomial(Monomial(z_var()), shape);
      auto sv = ideal->vectorize(Polynomial<F>(P.field(), source));
      ideal->span().reduce(sv);
      auto coeffs = express_in_span(P.field(), cols, reduced, sv);
      if (!coeffs) return std::nullopt;
      Polynomial<F> target(P.field());
      for (unsigned i = 0; i < split.size(); ++i) target.add_term(split[i], (*coeffs)[i]);
      wit.certificates.emplace(std::make_pair(shape, side), target);
    }
  }
  return wit;
}

template <class F> VarietyPresentation<F> builtin_presentation(const std::string &name, F field) {
  auto X = [&](unsigned i) { return Monomial(Indeterminate::var(i)); };
  auto mono = [&](const Monomial &m) { return Polynomial<F>(field, m); };
  Monomial z(z_var());
  if (name == "associative") {
    Polynomial<F> assoc =
        mono(Monomial(Monomial(X(1), X(2)), X(3))) - mono(Monomial(X(1), Monomial(X(2), X(3))));
    SeparativityWitness<F> wit;
    wit.d = 0;
    Monomial u(X(1), X(2));
    wit.certificates.emplace(std::make_pair(u, ZSide::Right),
                             mono(Monomial(X(1), Monomial(X(2), z))));
    wit.certificates.emplace(std::make_pair(u, ZSide::Left),
                             mono(Monomial(Monomial(z, X(1)), X(2))));
    return VarietyPresentation<F>("associative", field, {assoc}, wit);
  }
  if (name == "lie") {
    Polynomial<F> alt = mono(Monomial(X(1), X(1)));
    Polynomial<F> anti = mono(Monomial(X(1), X(2))) + mono(Monomial(X(2), X(1)));
    Polynomial<F> jacobi = mono(Monomial(Monomial(X(1), X(2)), X(3))) +
                           mono(Monomial(Monomial(X(2), X(3)), X(1))) +
                           mono(Monomial(Monomial(X(3), X(1)), X(2)));
    SeparativityWitness<F> wit;
    wit.d = 0;
    Monomial u(X(1), X(2));
    // (x1 x2) z = -(x2 z) x1 - (z x1) x2 by the Jacobi identity
    Polynomial<F> right =
        -mono(Monomial(Monomial(X(2), z), X(1))) - mono(Monomial(Monomial(z, X(1)), X(2)));
    wit.certificates.emplace(std::make_pair(u, ZSide::Right), right);
    wit.certificates.emplace(std::make_pair(u, ZSide::Left), -right);
    return VarietyPresentation<F>("lie", field, {alt, anti, jacobi}, wit);
  }
  if (name == "jordan") {
    Polynomial<F> comm = mono(Monomial(X(1), X(2))) - mono(Monomial(X(2), X(1)));
    Polynomial<F> jordan =
        mono(Monomial(Monomial(X(1), X(2)), Monomial(X(1), X(1)))) -
        mono(Monomial(X(1), Monomial(X(2), Monomial(X(1), X(1)))));
    return VarietyPresentation<F>("jordan", field, {comm, jordan},
                                  derive_jordan_witness(field));
  }
  if (name == "four-nilpotent-products") {
    Polynomial<F> id4 = mono(Monomial(Monomial(X(1), X(2)), Monomial(X(3), X(4))));
    SeparativityWitness<F> wit;
    wit.d = 0;
    wit.split_z = true;
    Monomial u(X(1), X(2));
    wit.certificates.emplace(std::make_pair(u, ZSide::Right), Polynomial<F>(field));
    wit.certificates.emplace(std::make_pair(u, ZSide::Left), Polynomial<F>(field));
    return VarietyPresentation<F>("four-nilpotent-products", field, {id4}, wit);
  }
  if (name == "commutative-pqr") {
    Polynomial<F> comm = mono(Monomial(X(1), X(2))) - mono(Monomial(X(2), X(1)));
    Polynomial<F> id5 =
        mono(Monomial(Monomial(Monomial(X(1), X(2)), Monomial(X(3), X(4))), X(5)));
    return VarietyPresentation<F>("commutative-pqr", field, {comm, id5});
  }
  if (name == "alternating-pqr") {
    Polynomial<F> alt = mono(Monomial(X(1), X(1)));
    Polynomial<F> anti = mono(Monomial(X(1), X(2))) + mono(Monomial(X(2), X(1)));
    Polynomial<F> id5 =
        mono(Monomial(Monomial(Monomial(X(1), X(2)), Monomial(X(3), X(4))), X(5)));
    return VarietyPresentation<F>("alternating-pqr", field, {alt, anti, id5});
  }
  throw std::invalid_argument("builtin_presentation: unknown name '" + name + "'");
}

inline const std::vector<std::string> &builtin_presentation_names() {
  static const std::vector<std::string> names = {
      "associative", "lie", "jordan", "four-nilpotent-products", "commutative-pqr",
      "alternating-pqr"};
  return names;
}

// ---------------------------------------------------------------------------
// presentation file format
//
//   field Q | field GF(p)
//   vars x1 x2 ...
//   <polynomial> per line, asserted = 0
//   witness d=<n> [split-z]
//   <shape-monomial> <L|R> := <polynomial>

template <class F> std::string to_file_string(const VarietyPresentation<F> &P) {
  std::ostringstream os;
  os << "field " << P.field().name() << "\n";
  std::set<Indeterminate> vars;
  for (auto &f : P.defining_identities())
    for (auto v : f.variables()) vars.insert(v);
  os << "vars";
  for (auto v : vars) os << " " << v.name();
  os << "\n";
  for (auto &f : P.defining_identities()) os << to_string(f) << "\n";
  if (P.witness()) {
    const auto &w = *P.witness();
    os << "witness d=" << w.d << (w.split_z ? " split-z" : "") << "\n";
    for (auto &[key, target] : w.certificates)
      os << to_string(key.first) << " " << to_string(key.second) << " := " << to_string(target)
         << "\n";
  }
  return os.str();
}

template <class F>
VarietyPresentation<F> parse_presentation(const F &field, const std::string &text,
                                          const std::string &name = "file") {
  std::istringstream is(text);
  std::string line;
  std::vector<Polynomial<F>> identities;
  std::optional<SeparativityWitness<F>> witness;
  bool in_witness = false;
  bool field_seen = false;
  std::set<std::string> declared;
  while (std::getline(is, line)) {
    auto toks = detail::split_ws(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (toks[0] == "field") {
      if (toks.size() != 2) throw ParseError("presentation: malformed field line");
      auto p = parse_field_header(toks[1]);
      if ((p.has_value() != (field.characteristic() != 0)) ||
          (p && *p != field.characteristic()))
        throw ParseError("presentation: file field " + toks[1] + " does not match " +
                         field.name());
      field_seen = true;
    } else if (toks[0] == "vars") {
      for (size_t i = 1; i < toks.size(); ++i) declared.insert(toks[i]);
    } else if (toks[0] == "witness") {
      in_witness = true;
      witness = SeparativityWitness<F>();
      for (size_t i = 1; i < toks.size(); ++i) {
        if (toks[i].rfind("d=", 0) == 0)
          witness->d = static_cast<unsigned>(std::stoul(toks[i].substr(2)));
        else if (toks[i] == "split-z")
          witness->split_z = true;
        else
          throw ParseError("presentation: unexpected witness token '" + toks[i] + "'");
      }
    } else if (in_witness) {
      auto sep = line.find(":=");
      if (sep == std::string::npos)
        throw ParseError("presentation: expected ':=' in certificate line: " + line);
      auto lhs = detail::split_ws(line.substr(0, sep));
      if (lhs.size() < 2) throw ParseError("presentation: malformed certificate line: " + line);
      std::string side_tok = lhs.back();
      ZSide side;
      if (side_tok == "L")
        side = ZSide::Left;
      else if (side_tok == "R")
        side = ZSide::Right;
      else
        throw ParseError("presentation: certificate side must be L or R, got '" + side_tok + "'");
      std::string shape_str;
      for (size_t i = 0; i + 1 < lhs.size(); ++i) shape_str += lhs[i] + " ";
      Monomial shape = parse_monomial(shape_str);
      Polynomial<F> target = parse_polynomial(field, line.substr(sep + 2));
      witness->certificates.emplace(std::make_pair(shape, side), target);
    } else {
      Polynomial<F> f = parse_polynomial(field, line);
      for (auto v : f.variables())
        if (!declared.empty() && !declared.count(v.name()))
          throw ParseError("presentation: identity uses undeclared variable " + v.name());
      identities.push_back(std::move(f));
    }
  }
  if (!field_seen) throw ParseError("presentation: missing field line");
  return VarietyPresentation<F>(name, field, std::move(identities), std::move(witness));
}

} // namespace separative
