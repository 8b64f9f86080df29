#pragma once

// Polynomials of the free nonassociative algebra: finite scalar-weighted
// sums of monomials, with the bilinear product, substitution, multidegree
// decomposition and multilinear-part extraction. No associativity or
// commutativity is assumed anywhere.

#include "separative/monomial.hpp"
#include "separative/scalar.hpp"

#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace separative {

/// Occurrence count per indeterminate.
class Multidegree {
public:
  Multidegree() = default;

  static Multidegree of_monomial(const Monomial &w) {
    Multidegree d;
    std::vector<Indeterminate> leaves;
    collect_leaves(w, leaves);
    for (auto v : leaves) ++d.counts_[v];
    return d;
  }

  unsigned total() const {
    unsigned t = 0;
    for (auto &[v, c] : counts_) t += c;
    return t;
  }
  unsigned count(Indeterminate v) const {
    auto it = counts_.find(v);
    return it == counts_.end() ? 0 : it->second;
  }
  const std::map<Indeterminate, unsigned> &counts() const { return counts_; }
  void set(Indeterminate v, unsigned c) {
    if (c == 0)
      counts_.erase(v);
    else
      counts_[v] = c;
  }

  bool contains(const Multidegree &o) const {
    for (auto &[v, c] : o.counts_)
      if (count(v) < c) return false;
    return true;
  }
  Multidegree minus(const Multidegree &o) const {
    Multidegree d = *this;
    for (auto &[v, c] : o.counts_) {
      unsigned mine = d.count(v);
      if (mine < c) throw std::invalid_argument("Multidegree: negative difference");
      d.set(v, mine - c);
    }
    return d;
  }
  Multidegree plus(const Multidegree &o) const {
    Multidegree d = *this;
    for (auto &[v, c] : o.counts_) d.set(v, d.count(v) + c);
    return d;
  }
  Multidegree scaled(unsigned k) const {
    Multidegree d;
    for (auto &[v, c] : counts_) d.set(v, c * k);
    return d;
  }

  friend bool operator==(const Multidegree &a, const Multidegree &b) {
    return a.counts_ == b.counts_;
  }
  friend bool operator<(const Multidegree &a, const Multidegree &b) {
    return a.counts_ < b.counts_;
  }

  std::string str() const {
    std::string s;
    for (auto &[v, c] : counts_) {
      if (!s.empty()) s += " ";
      s += v.name() + ":" + std::to_string(c);
    }
    return s.empty() ? "<empty>" : s;
  }

private:
  std::map<Indeterminate, unsigned> counts_;
};

template <class F> class Polynomial {
public:
  using Field = F;
  using Scalar = typename F::Scalar;
  using TermMap = std::map<Monomial, Scalar, MonomialLess>;

  explicit Polynomial(F field) : field_(std::move(field)) {}
  Polynomial(F field, const Monomial &w) : field_(std::move(field)) {
    terms_.emplace(w, field_.one());
  }
  Polynomial(F field, const Monomial &w, Scalar c) : field_(std::move(field)) {
    if (!F::is_zero(c)) terms_.emplace(w, std::move(c));
  }

  const F &field() const { return field_; }
  const TermMap &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }

  Scalar coeff(const Monomial &w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? field_.zero() : it->second;
  }

  void add_term(const Monomial &w, const Scalar &c) {
    if (F::is_zero(c)) return;
    auto [it, fresh] = terms_.emplace(w, c);
    if (!fresh) {
      it->second += c;
      if (F::is_zero(it->second)) terms_.erase(it);
    }
  }

  friend Polynomial operator+(const Polynomial &a, const Polynomial &b) {
    a.check_field(b);
    Polynomial r = a;
    for (auto &[w, c] : b.terms_) r.add_term(w, c);
    return r;
  }
  friend Polynomial operator-(const Polynomial &a, const Polynomial &b) {
    a.check_field(b);
    Polynomial r = a;
    for (auto &[w, c] : b.terms_) r.add_term(w, -c);
    return r;
  }
  Polynomial operator-() const {
    Polynomial r(field_);
    for (auto &[w, c] : terms_) r.terms_.emplace(w, -c);
    return r;
  }
  Polynomial &operator+=(const Polynomial &b) {
    check_field(b);
    for (auto &[w, c] : b.terms_) add_term(w, c);
    return *this;
  }
  Polynomial &operator-=(const Polynomial &b) {
    check_field(b);
    for (auto &[w, c] : b.terms_) add_term(w, -c);
    return *this;
  }

  friend Polynomial operator*(const Scalar &c, const Polynomial &f) {
    Polynomial r(f.field_);
    if (F::is_zero(c)) return r;
    for (auto &[w, a] : f.terms_) r.add_term(w, c * a);
    return r;
  }

  /// Bilinear extension of the free product: the product of monomials u, v
  /// is the monomial (u v).
  friend Polynomial operator*(const Polynomial &a, const Polynomial &b) {
    a.check_field(b);
    Polynomial r(a.field_);
    for (auto &[u, c] : a.terms_)
      for (auto &[v, d] : b.terms_) r.add_term(Monomial(u, v), c * d);
    return r;
  }

  friend bool operator==(const Polynomial &a, const Polynomial &b) {
    return a.field_ == b.field_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Polynomial &a, const Polynomial &b) { return !(a == b); }

  std::set<Indeterminate> variables() const {
    std::set<Indeterminate> vars;
    std::vector<Indeterminate> leaves;
    for (auto &[w, c] : terms_) {
      leaves.clear();
      collect_leaves(w, leaves);
      vars.insert(leaves.begin(), leaves.end());
    }
    return vars;
  }

private:
  void check_field(const Polynomial &o) const {
    if (!(field_ == o.field_))
      throw std::invalid_argument("Polynomial: mixed fields " + field_.name() + " and " +
                                  o.field_.name());
  }

  F field_;
  TermMap terms_;
};

template <class F> Polynomial<F> poly_add(const Polynomial<F> &f, const Polynomial<F> &g) {
  return f + g;
}
template <class F>
Polynomial<F> poly_scale(const typename F::Scalar &c, const Polynomial<F> &f) {
  return c * f;
}
template <class F> Polynomial<F> poly_mul(const Polynomial<F> &f, const Polynomial<F> &g) {
  return f * g;
}

// ---------------------------------------------------------------------------
// substitution

/// The multiplication-respecting linear extension of `assignment`. Every
/// variable occurring in f must be assigned.
template <class F>
Polynomial<F> substitute(const Polynomial<F> &f,
                         const std::map<Indeterminate, Polynomial<F>> &assignment) {
  std::map<const void *, Polynomial<F>> memo;
  std::function<Polynomial<F>(const Monomial &)> sub = [&](const Monomial &w) -> Polynomial<F> {
    auto it = memo.find(w.id());
    if (it != memo.end()) return it->second;
    Polynomial<F> r(f.field());
    if (w.is_leaf()) {
      auto a = assignment.find(w.leaf());
      if (a == assignment.end())
        throw std::invalid_argument("substitute: unassigned variable " + w.leaf().name());
      r = a->second;
    } else {
      r = sub(w.left()) * sub(w.right());
    }
    memo.emplace(w.id(), r);
    return r;
  };
  Polynomial<F> out(f.field());
  for (auto &[w, c] : f.terms()) out += c * sub(w);
  return out;
}

/// Substitutes monomials for variables; unassigned variables map to
/// themselves.
template <class F>
Polynomial<F> substitute_monomials(const Polynomial<F> &f,
                                   const std::map<Indeterminate, Monomial> &assignment) {
  Polynomial<F> out(f.field());
  for (auto &[w, c] : f.terms()) out.add_term(substitute_leaves(w, assignment), c);
  return out;
}

/// Applies the one-placeholder context u to g: substitutes g for the
/// placeholder and leaves every other variable fixed.
template <class F> Polynomial<F> apply_context(const Monomial &u, const Polynomial<F> &g) {
  std::map<Indeterminate, Polynomial<F>> a;
  a.emplace(Indeterminate::placeholder(), g);
  std::vector<Indeterminate> leaves;
  collect_leaves(u, leaves);
  for (auto v : leaves)
    if (!v.is_placeholder()) a.emplace(v, Polynomial<F>(g.field(), Monomial(v)));
  return substitute(Polynomial<F>(g.field(), u), a);
}

// ---------------------------------------------------------------------------
// multidegree machinery

template <class F>
std::map<Multidegree, Polynomial<F>> multidegree_components(const Polynomial<F> &f) {
  std::map<Multidegree, Polynomial<F>> out;
  for (auto &[w, c] : f.terms()) {
    Multidegree d = Multidegree::of_monomial(w);
    auto it = out.find(d);
    if (it == out.end()) it = out.emplace(d, Polynomial<F>(f.field())).first;
    it->second.add_term(w, c);
  }
  return out;
}

template <class F> bool is_multihomogeneous(const Polynomial<F> &f) {
  return multidegree_components(f).size() <= 1;
}

/// Multidegree of a nonzero multihomogeneous polynomial.
template <class F> Multidegree multidegree_of(const Polynomial<F> &f) {
  auto comps = multidegree_components(f);
  if (comps.size() != 1)
    throw std::invalid_argument("multidegree_of: polynomial is not multihomogeneous");
  return comps.begin()->first;
}

/// The component in which each variable of `vars` occurs exactly once and
/// no other variable occurs.
template <class F>
Polynomial<F> multilinear_part(const Polynomial<F> &f, const std::set<Indeterminate> &vars) {
  Polynomial<F> out(f.field());
  std::vector<Indeterminate> leaves;
  for (auto &[w, c] : f.terms()) {
    if (w.length() != vars.size()) continue;
    leaves.clear();
    collect_leaves(w, leaves);
    std::set<Indeterminate> seen(leaves.begin(), leaves.end());
    if (seen.size() == leaves.size() && seen == vars) out.add_term(w, c);
  }
  return out;
}

/// Folds monomials equal modulo commutativity onto their canonical form.
template <class F> Polynomial<F> comm_canonical(const Polynomial<F> &f) {
  Polynomial<F> out(f.field());
  for (auto &[w, c] : f.terms()) out.add_term(comm_canonical(w), c);
  return out;
}

// ---------------------------------------------------------------------------
// polarization

/// All multihomogeneous polarizations of a multihomogeneous polynomial:
/// repeatedly replaces a variable of degree >= 2 by a sum of two fresh
/// variables and keeps the cross components. The returned family contains
/// f itself and ends with its full multilinearizations; every member is a
/// consequence of f in any variety containing it.
template <class F> std::vector<Polynomial<F>> polarization_closure(const Polynomial<F> &f) {
  if (f.is_zero()) return {};
  if (!is_multihomogeneous(f))
    throw std::invalid_argument("polarization_closure: polynomial is not multihomogeneous");
  std::vector<Polynomial<F>> out;
  std::set<std::string> seen;
  // canonical renaming so that relabeled duplicates collapse
  auto canon_key = [](const Polynomial<F> &g) {
    std::map<Indeterminate, Monomial> ren;
    unsigned k = 0;
    for (auto v : g.variables()) ren.emplace(v, Monomial(Indeterminate::named("c" + std::to_string(++k))));
    Polynomial<F> r = substitute_monomials(g, ren);
    std::string s;
    for (auto &[w, c] : r.terms()) s += to_string(w) + "|" + g.field().to_string(c) + ";";
    return s;
  };
  std::vector<Polynomial<F>> work{f};
  unsigned fresh = 0;
  while (!work.empty()) {
    Polynomial<F> g = work.back();
    work.pop_back();
    if (g.is_zero()) continue;
    if (!seen.insert(canon_key(g)).second) continue;
    out.push_back(g);
    Multidegree d = multidegree_of(g);
    for (auto &[v, cnt] : d.counts()) {
      if (cnt < 2) continue;
      Indeterminate a = Indeterminate::named("t" + std::to_string(++fresh));
      Indeterminate b = Indeterminate::named("t" + std::to_string(++fresh));
      std::map<Indeterminate, Polynomial<F>> sub;
      Polynomial<F> ab(g.field(), Monomial(a));
      ab.add_term(Monomial(b), g.field().one());
      sub.emplace(v, ab);
      for (auto &[u, uc] : d.counts())
        if (u != v) sub.emplace(u, Polynomial<F>(g.field(), Monomial(u)));
      Polynomial<F> h = substitute(g, sub);
      for (auto &[dd, comp] : multidegree_components(h)) {
        if (dd.count(a) >= 1 && dd.count(b) >= 1) work.push_back(comp);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// enumeration by multidegree

/// All monomials of the given multidegree (optionally with the placeholder
/// occurring exactly once in addition), sorted canonically.
inline std::vector<Monomial> monomials_of_multidegree(const Multidegree &deg,
                                                      bool with_placeholder = false) {
  std::vector<Indeterminate> vars;
  std::vector<unsigned> counts;
  for (auto &[v, c] : deg.counts()) {
    vars.push_back(v);
    counts.push_back(c);
  }
  std::map<std::pair<std::vector<unsigned>, bool>, std::vector<Monomial>> memo;
  std::function<const std::vector<Monomial> &(std::vector<unsigned>, bool)> gen =
      [&](std::vector<unsigned> cnt, bool ph) -> const std::vector<Monomial> & {
    auto key = std::make_pair(cnt, ph);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    unsigned total = ph ? 1 : 0;
    for (auto c : cnt) total += c;
    std::vector<Monomial> out;
    if (total == 1) {
      if (ph) {
        out.emplace_back(Indeterminate::placeholder());
      } else {
        for (size_t i = 0; i < cnt.size(); ++i)
          if (cnt[i] == 1) out.emplace_back(vars[i]);
      }
    } else if (total >= 2) {
      // split the count vector (and placeholder) between left and right
      std::vector<unsigned> lcnt(cnt.size(), 0);
      std::function<void(size_t)> splits = [&](size_t i) {
        if (i == cnt.size()) {
          for (unsigned lph = 0; lph <= (ph ? 1u : 0u); ++lph) {
            unsigned ltotal = lph;
            for (auto c : lcnt) ltotal += c;
            unsigned rtotal = total - ltotal;
            if (ltotal == 0 || rtotal == 0) continue;
            std::vector<unsigned> rcnt(cnt.size());
            for (size_t k = 0; k < cnt.size(); ++k) rcnt[k] = cnt[k] - lcnt[k];
            const auto &ls = gen(lcnt, lph == 1);
            const auto &rs = gen(rcnt, ph && lph == 0);
            for (const auto &l : ls)
              for (const auto &r : rs) out.emplace_back(l, r);
          }
          return;
        }
        for (unsigned c = 0; c <= cnt[i]; ++c) {
          lcnt[i] = c;
          splits(i + 1);
        }
        lcnt[i] = 0;
      };
      splits(0);
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    return memo.emplace(key, std::move(out)).first->second;
  };
  return gen(counts, with_placeholder);
}

// ---------------------------------------------------------------------------
// text format: terms joined by " + " / " - ", each term "COEFF * MON" with
// the coefficient omitted when 1

template <class F> std::string to_string(const Polynomial<F> &f) {
  if (f.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (auto &[w, c] : f.terms()) {
    typename F::Scalar mag = c;
    bool neg = false;
    if constexpr (std::is_same_v<F, RationalField>) {
      if (c < 0) {
        neg = true;
        mag = -c;
      }
    }
    if (first) {
      if (neg) s += "-";
      first = false;
    } else {
      s += neg ? " - " : " + ";
    }
    if (mag == f.field().one()) {
      s += to_string(w);
    } else {
      s += f.field().to_string(mag) + " * " + to_string(w);
    }
  }
  return s;
}

namespace detail {
template <class F>
typename F::Scalar parse_scalar_token(const F &field, std::string_view s, size_t &i) {
  // [digits]['/'digits]
  size_t start = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == start) throw ParseError("polynomial: expected a number at position " + std::to_string(start));
  long long num = std::stoll(std::string(s.substr(start, i - start)));
  long long den = 1;
  if (i < s.size() && s[i] == '/') {
    ++i;
    size_t dstart = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == dstart) throw ParseError("polynomial: expected a denominator at position " + std::to_string(dstart));
    den = std::stoll(std::string(s.substr(dstart, i - dstart)));
    if (den == 0) throw ParseError("polynomial: zero denominator");
  }
  return field.from_fraction(num, den);
}
} // namespace detail

template <class F> Polynomial<F> parse_polynomial(const F &field, std::string_view s) {
  Polynomial<F> out(field);
  size_t i = 0;
  detail::skip_ws(s, i);
  if (i >= s.size()) throw ParseError("polynomial: empty input");
  bool first = true;
  while (i < s.size()) {
    bool neg = false;
    detail::skip_ws(s, i);
    if (!first) {
      if (s[i] == '+') {
        ++i;
      } else if (s[i] == '-') {
        neg = true;
        ++i;
      } else {
        throw ParseError("polynomial: expected '+' or '-' at position " + std::to_string(i));
      }
    } else if (s[i] == '-') {
      neg = true;
      ++i;
    }
    first = false;
    detail::skip_ws(s, i);
    if (i >= s.size()) throw ParseError("polynomial: dangling sign");
    typename F::Scalar c = field.one();
    bool have_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      c = detail::parse_scalar_token(field, s, i);
      have_coeff = true;
      detail::skip_ws(s, i);
      if (i < s.size() && s[i] == '*') {
        ++i;
        detail::skip_ws(s, i);
      }
    }
    if (i >= s.size() || (!std::isalpha(static_cast<unsigned char>(s[i])) && s[i] != '(')) {
      // a bare number: only the zero polynomial is representable that way
      if (have_coeff && F::is_zero(c)) {
        detail::skip_ws(s, i);
        continue;
      }
      throw ParseError("polynomial: expected a monomial at position " + std::to_string(i));
    }
    Monomial w = detail::parse_mon(s, i);
    if (neg) c = -c;
    out.add_term(w, c);
    detail::skip_ws(s, i);
  }
  return out;
}

} // namespace separative
