#pragma once

// Bracketed nonassociative monomials as immutable binary trees, together
// with the submonomial / m-separating machinery and the text grammar
//
//   MON := VAR | "(" MON MON ")"
//
// The identifier "y" is reserved for the placeholder indeterminate.

#include "separative/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace separative {

inline constexpr unsigned kDefaultEnumLengthCap = 12;
inline constexpr unsigned kDefaultDegreeCap = 8;
inline constexpr unsigned kDefaultMaxLevel = 10;

/// A named indeterminate, or the distinguished placeholder "y".
/// Values are interned; copying is trivial. The ordering is independent
/// of interning order: variables compare by (alphabetic prefix, numeric
/// suffix, full name), and the placeholder is greatest.
class Indeterminate {
public:
  static Indeterminate named(std::string_view name) { return Indeterminate(intern(name)); }
  static Indeterminate var(unsigned index) { return named("x" + std::to_string(index)); }
  static Indeterminate placeholder() { return named("y"); }

  const std::string &name() const { return e_->name; }
  bool is_placeholder() const { return e_->placeholder; }

  friend bool operator==(Indeterminate a, Indeterminate b) { return a.e_ == b.e_; }
  friend bool operator!=(Indeterminate a, Indeterminate b) { return a.e_ != b.e_; }
  friend bool operator<(Indeterminate a, Indeterminate b) {
    if (a.e_ == b.e_) return false;
    if (a.e_->placeholder != b.e_->placeholder) return b.e_->placeholder;
    if (a.e_->prefix != b.e_->prefix) return a.e_->prefix < b.e_->prefix;
    if (a.e_->num != b.e_->num) return a.e_->num < b.e_->num;
    return a.e_->name < b.e_->name;
  }

  size_t hash() const { return std::hash<const void *>()(e_); }

private:
  struct Entry {
    std::string name;
    std::string prefix;
    long long num; // -1 when the name has no trailing digits
    bool placeholder;
  };

  explicit Indeterminate(const Entry *e) : e_(e) {}

  static const Entry *intern(std::string_view name) {
    if (name.empty()) throw std::invalid_argument("Indeterminate: empty name");
    static std::mutex mu;
    static std::deque<Entry> entries;
    static std::map<std::string, const Entry *, std::less<>> by_name;
    std::lock_guard<std::mutex> lock(mu);
    auto it = by_name.find(name);
    if (it != by_name.end()) return it->second;
    Entry e;
    e.name = std::string(name);
    size_t cut = e.name.size();
    while (cut > 0 && std::isdigit(static_cast<unsigned char>(e.name[cut - 1]))) --cut;
    e.prefix = e.name.substr(0, cut);
    e.num = cut < e.name.size() && e.name.size() - cut <= 12 ? std::stoll(e.name.substr(cut)) : -1;
    e.placeholder = e.name == "y";
    entries.push_back(std::move(e));
    const Entry *p = &entries.back();
    by_name.emplace(p->name, p);
    return p;
  }

  const Entry *e_;
};

/// A fully bracketed product of indeterminates. Immutable, with structural
/// sharing; the length (leaf count) and a structural hash are cached per
/// node. Default-constructed monomials are empty sentinels usable only as
/// "no value".
class Monomial {
public:
  Monomial() = default;
  explicit Monomial(Indeterminate leaf);
  Monomial(const Monomial &left, const Monomial &right);

  explicit operator bool() const { return n_ != nullptr; }
  bool is_leaf() const;
  Indeterminate leaf() const;
  const Monomial &left() const;
  const Monomial &right() const;
  unsigned length() const;
  size_t hash() const;
  const void *id() const { return n_.get(); }

  friend bool operator==(const Monomial &a, const Monomial &b);
  friend bool operator!=(const Monomial &a, const Monomial &b) { return !(a == b); }

  /// Canonical order: by length, then lexicographically on the preorder
  /// traversal, with a product node preceding any leaf and leaves ordered
  /// as Indeterminates.
  friend bool operator<(const Monomial &a, const Monomial &b) { return compare(a, b) < 0; }

  static int compare(const Monomial &a, const Monomial &b);

private:
  struct Node;

  static bool structural_eq(const Monomial &a, const Monomial &b);
  static int compare_same_length(const Monomial &a, const Monomial &b);

  std::shared_ptr<const Node> n_;
};

struct Monomial::Node {
  std::optional<Indeterminate> leaf;
  Monomial left, right;
  unsigned length = 0;
  size_t hash = 0;
};

inline Monomial::Monomial(Indeterminate v) {
  auto n = std::make_shared<Node>();
  n->leaf = v;
  n->length = 1;
  n->hash = v.hash() * 0x9e3779b97f4a7c15ULL + 0x1234567;
  n_ = std::move(n);
}

inline Monomial::Monomial(const Monomial &l, const Monomial &r) {
  if (!l || !r) throw std::invalid_argument("Monomial: product of empty monomial");
  auto n = std::make_shared<Node>();
  n->left = l;
  n->right = r;
  n->length = l.length() + r.length();
  size_t h = l.hash();
  h ^= r.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  n->hash = h;
  n_ = std::move(n);
}

inline bool Monomial::is_leaf() const { return n_->leaf.has_value(); }
inline Indeterminate Monomial::leaf() const { return *n_->leaf; }
inline const Monomial &Monomial::left() const { return n_->left; }
inline const Monomial &Monomial::right() const { return n_->right; }
inline unsigned Monomial::length() const { return n_->length; }
inline size_t Monomial::hash() const { return n_->hash; }

inline bool operator==(const Monomial &a, const Monomial &b) {
  if (a.n_ == b.n_) return true;
  if (!a.n_ || !b.n_) return false;
  if (a.n_->hash != b.n_->hash || a.n_->length != b.n_->length) return false;
  return Monomial::structural_eq(a, b);
}

inline bool Monomial::structural_eq(const Monomial &a, const Monomial &b) {
  if (a.n_ == b.n_) return true;
  if (a.is_leaf() != b.is_leaf()) return false;
  if (a.is_leaf()) return a.leaf() == b.leaf();
  return a.left() == b.left() && a.right() == b.right();
}

inline int Monomial::compare(const Monomial &a, const Monomial &b) {
  if (!a.n_ || !b.n_) return (a.n_ ? 1 : 0) - (b.n_ ? 1 : 0);
  if (a.n_->length != b.n_->length) return a.n_->length < b.n_->length ? -1 : 1;
  return compare_same_length(a, b);
}

// preorder-lex within equal total length; preorder encodings are
// prefix-free, so a (left, right) recursion realizes it
inline int Monomial::compare_same_length(const Monomial &a, const Monomial &b) {
  if (a.n_ == b.n_) return 0;
  bool al = a.is_leaf(), bl = b.is_leaf();
  if (al && bl) {
    if (a.leaf() == b.leaf()) return 0;
    return a.leaf() < b.leaf() ? -1 : 1;
  }
  if (al != bl) return al ? 1 : -1; // product token sorts before leaf token
  if (int c = compare(a.left(), b.left()); c != 0) return c;
  return compare(a.right(), b.right());
}

struct MonomialLess {
  bool operator()(const Monomial &a, const Monomial &b) const { return a < b; }
};

inline unsigned length(const Monomial &w) { return w.length(); }

// ---------------------------------------------------------------------------
// submonomials and separation predicates

struct SubmonomialOccurrence {
  std::string path; // 'L'/'R' steps from the root
  Monomial sub;
};

namespace detail {
inline void collect_occurrences(const Monomial &w, std::string &path,
                                std::vector<SubmonomialOccurrence> &out) {
  out.push_back({path, w});
  if (!w.is_leaf()) {
    path.push_back('L');
    collect_occurrences(w.left(), path, out);
    path.back() = 'R';
    collect_occurrences(w.right(), path, out);
    path.pop_back();
  }
}
inline void collect_lengths(const Monomial &w, std::set<unsigned> &out) {
  out.insert(w.length());
  if (!w.is_leaf()) {
    collect_lengths(w.left(), out);
    collect_lengths(w.right(), out);
  }
}
inline bool has_submonomial_of_length(const Monomial &w, unsigned target) {
  if (w.length() == target) return true;
  if (w.length() < target || w.is_leaf()) return false;
  return has_submonomial_of_length(w.left(), target) ||
         has_submonomial_of_length(w.right(), target);
}
} // namespace detail

/// The occurrence list of submonomials: w itself first, then recursively
/// those of the left and right factor. Size is always 2*length(w) - 1.
inline std::vector<SubmonomialOccurrence> submonomial_occurrences(const Monomial &w) {
  std::vector<SubmonomialOccurrence> out;
  out.reserve(2 * w.length() - 1);
  std::string path;
  detail::collect_occurrences(w, path, out);
  return out;
}

/// The set of lengths attained by submonomials of w.
inline std::set<unsigned> submonomial_length_set(const Monomial &w) {
  std::set<unsigned> out;
  detail::collect_lengths(w, out);
  return out;
}

/// w is m-separating when it has a submonomial of length exactly
/// length(w) - m.
inline bool is_m_separating(const Monomial &w, unsigned m) {
  if (m >= w.length()) return false;
  return detail::has_submonomial_of_length(w, w.length() - m);
}

/// m-separating for some m in [n, N].
inline bool is_range_separating(const Monomial &w, unsigned n, unsigned N) {
  if (n > N) throw std::invalid_argument("is_range_separating: empty range n > N");
  for (unsigned m = n; m <= N; ++m)
    if (is_m_separating(w, m)) return true;
  return false;
}

// ---------------------------------------------------------------------------
// factorizations and contexts

struct Factorization {
  std::vector<Monomial> factors;
  Monomial shape; // monomial over slot variables s1..sm, left to right
};

inline Indeterminate slot_var(unsigned i) { return Indeterminate::named("s" + std::to_string(i)); }

/// Writes w as a bracketed product of exactly m submonomials, repeatedly
/// splitting the leftmost splittable factor. Substituting factors[i-1]
/// for slot si in the shape reconstructs w.
inline Factorization split_into_factors(const Monomial &w, unsigned m) {
  if (m < 1 || m > w.length())
    throw std::invalid_argument("split_into_factors: need 1 <= m <= length(w)");
  std::vector<Monomial> factors{w};
  struct ShapeNode {
    int factor = -1; // index into factors when leaf
    std::unique_ptr<ShapeNode> l, r;
  };
  auto root = std::make_unique<ShapeNode>();
  root->factor = 0;
  std::vector<ShapeNode *> leaves{root.get()};
  while (factors.size() < m) {
    size_t k = 0;
    while (k < factors.size() && factors[k].length() == 1) ++k;
    // reachable since m <= length(w)
    Monomial f = factors[k];
    factors[k] = f.left();
    factors.insert(factors.begin() + static_cast<long>(k) + 1, f.right());
    ShapeNode *leaf = leaves[k];
    leaf->l = std::make_unique<ShapeNode>();
    leaf->r = std::make_unique<ShapeNode>();
    leaf->factor = -1;
    leaves[k] = leaf->l.get();
    leaves.insert(leaves.begin() + static_cast<long>(k) + 1, leaf->r.get());
  }
  for (size_t i = 0; i < leaves.size(); ++i) leaves[i]->factor = static_cast<int>(i);
  std::function<Monomial(const ShapeNode *)> build = [&](const ShapeNode *nd) -> Monomial {
    if (nd->factor >= 0) return Monomial(slot_var(static_cast<unsigned>(nd->factor) + 1));
    return Monomial(build(nd->l.get()), build(nd->r.get()));
  };
  return Factorization{std::move(factors), build(root.get())};
}

/// Replaces leaves according to `map`; unmapped leaves are kept.
inline Monomial substitute_leaves(const Monomial &w,
                                  const std::map<Indeterminate, Monomial> &map) {
  if (w.is_leaf()) {
    auto it = map.find(w.leaf());
    return it == map.end() ? w : it->second;
  }
  Monomial l = substitute_leaves(w.left(), map);
  Monomial r = substitute_leaves(w.right(), map);
  if (l.id() == w.left().id() && r.id() == w.right().id()) return w;
  return Monomial(l, r);
}

struct Context {
  Monomial frame; // contains the placeholder exactly once
  Monomial sub;   // length L; substituting it for the placeholder yields w
};

namespace detail {
inline Monomial replace_at(const Monomial &w, const std::string &path, size_t i,
                           const Monomial &repl) {
  if (i == path.size()) return repl;
  if (path[i] == 'L') return Monomial(replace_at(w.left(), path, i + 1, repl), w.right());
  return Monomial(w.left(), replace_at(w.right(), path, i + 1, repl));
}
} // namespace detail

/// One context per submonomial occurrence of length L, in occurrence order.
inline std::vector<Context> contexts(const Monomial &w, unsigned L) {
  std::vector<Context> out;
  Monomial hole(Indeterminate::placeholder());
  for (const auto &occ : submonomial_occurrences(w)) {
    if (occ.sub.length() != L) continue;
    out.push_back({detail::replace_at(w, occ.path, 0, hole), occ.sub});
  }
  return out;
}

// ---------------------------------------------------------------------------
// enumeration

/// All monomials of length L with leaves drawn from `vars`, containing the
/// placeholder exactly `placeholder_count` (0 or 1) times. Sorted in
/// canonical order, no duplicates.
inline std::vector<Monomial> enumerate_monomials(const std::vector<Indeterminate> &vars,
                                                 unsigned L, unsigned placeholder_count,
                                                 unsigned max_len = kDefaultEnumLengthCap) {
  if (L < 1) throw std::invalid_argument("enumerate_monomials: L must be positive");
  if (L > max_len)
    throw DomainError("enumerate_monomials: length " + std::to_string(L) +
                      " exceeds the enumeration cap " + std::to_string(max_len));
  if (placeholder_count > 1)
    throw std::invalid_argument("enumerate_monomials: placeholder_count must be 0 or 1");
  std::map<std::pair<unsigned, unsigned>, std::vector<Monomial>> memo;
  std::function<const std::vector<Monomial> &(unsigned, unsigned)> gen =
      [&](unsigned len, unsigned ph) -> const std::vector<Monomial> & {
    auto key = std::make_pair(len, ph);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<Monomial> out;
    if (len == 1) {
      if (ph == 1) {
        out.emplace_back(Indeterminate::placeholder());
      } else {
        for (auto v : vars) out.emplace_back(v);
      }
    } else {
      for (unsigned a = 1; a < len; ++a) {
        for (unsigned pl = 0; pl <= ph; ++pl) {
          const auto &ls = gen(a, pl);
          const auto &rs = gen(len - a, ph - pl);
          for (const auto &l : ls)
            for (const auto &r : rs) out.emplace_back(l, r);
        }
      }
    }
    std::sort(out.begin(), out.end());
    return memo.emplace(key, std::move(out)).first->second;
  };
  return gen(L, placeholder_count);
}

/// Streams every monomial of length L over `vars` to `fn`, sharing
/// subtrees across successive labelings. Order unspecified.
inline void for_each_monomial(const std::vector<Indeterminate> &vars, unsigned L,
                              const std::function<void(const Monomial &)> &fn) {
  if (vars.empty() || L < 1) return;
  std::vector<Monomial> leaf_pool;
  leaf_pool.reserve(vars.size());
  for (auto v : vars) leaf_pool.emplace_back(v);
  std::function<void(unsigned, const std::function<void(const Monomial &)> &)> gen =
      [&](unsigned len, const std::function<void(const Monomial &)> &emit) {
        if (len == 1) {
          for (const auto &l : leaf_pool) emit(l);
          return;
        }
        for (unsigned a = 1; a < len; ++a) {
          gen(a, [&](const Monomial &l) {
            gen(len - a, [&](const Monomial &r) { emit(Monomial(l, r)); });
          });
        }
      };
  gen(L, fn);
}

// ---------------------------------------------------------------------------
// commutative canonical form

/// Recursively orders the two factors of every product, folding together
/// monomials that are equal modulo commutativity.
inline Monomial comm_canonical(const Monomial &w) {
  if (w.is_leaf()) return w;
  Monomial l = comm_canonical(w.left());
  Monomial r = comm_canonical(w.right());
  if (r < l) std::swap(l, r);
  if (l.id() == w.left().id() && r.id() == w.right().id()) return w;
  return Monomial(l, r);
}

// ---------------------------------------------------------------------------
// text grammar

inline std::string to_string(const Monomial &w) {
  if (!w) return "<null>";
  if (w.is_leaf()) return w.leaf().name();
  return "(" + to_string(w.left()) + " " + to_string(w.right()) + ")";
}

namespace detail {
inline void skip_ws(std::string_view s, size_t &i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}
inline Monomial parse_mon(std::string_view s, size_t &i) {
  skip_ws(s, i);
  if (i >= s.size()) throw ParseError("monomial: unexpected end of input");
  if (s[i] == '(') {
    ++i;
    Monomial l = parse_mon(s, i);
    Monomial r = parse_mon(s, i);
    skip_ws(s, i);
    if (i >= s.size() || s[i] != ')')
      throw ParseError("monomial: expected ')' at position " + std::to_string(i));
    ++i;
    return Monomial(l, r);
  }
  if (!std::isalpha(static_cast<unsigned char>(s[i])))
    throw ParseError(std::string("monomial: expected identifier or '(', got '") + s[i] + "'");
  size_t start = i;
  while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
  return Monomial(Indeterminate::named(s.substr(start, i - start)));
}
} // namespace detail

inline Monomial parse_monomial(std::string_view s) {
  size_t i = 0;
  Monomial w = detail::parse_mon(s, i);
  detail::skip_ws(s, i);
  if (i != s.size()) throw ParseError("monomial: trailing input at position " + std::to_string(i));
  return w;
}

/// Leaves of w in left-to-right order.
inline void collect_leaves(const Monomial &w, std::vector<Indeterminate> &out) {
  if (w.is_leaf()) {
    out.push_back(w.leaf());
    return;
  }
  collect_leaves(w.left(), out);
  collect_leaves(w.right(), out);
}

inline bool contains_placeholder(const Monomial &w) {
  if (w.is_leaf()) return w.leaf().is_placeholder();
  return contains_placeholder(w.left()) || contains_placeholder(w.right());
}

} // namespace separative
