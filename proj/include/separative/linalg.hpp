#pragma once

// Exact linear algebra over a field: incrementally maintained reduced row
// echelon spans and subspaces with canonical bases. Membership tests and
// subspace equality are exact.

#include "separative/scalar.hpp"

#include <optional>
#include <vector>

namespace separative {

/// A row space kept in reduced row echelon form. Rows are pivot-normalized
/// and fully cleared above and below, sorted by pivot column, so two spans
/// are equal iff their row lists are equal.
template <class F> class RowSpan {
public:
  using Scalar = typename F::Scalar;
  using Vec = std::vector<Scalar>;

  RowSpan(F field, unsigned cols) : field_(std::move(field)), cols_(cols) {}

  const F &field() const { return field_; }
  unsigned cols() const { return cols_; }
  unsigned rank() const { return static_cast<unsigned>(rows_.size()); }
  const std::vector<Vec> &rows() const { return rows_; }
  const std::vector<unsigned> &pivots() const { return pivots_; }

  /// Reduces v against the span in place; afterwards v has zeros in all
  /// pivot columns.
  void reduce(Vec &v) const {
    for (size_t r = 0; r < rows_.size(); ++r) {
      const Scalar &c = v[pivots_[r]];
      if (F::is_zero(c)) continue;
      Scalar factor = c; // pivot entries are 1
      for (unsigned j = pivots_[r]; j < cols_; ++j) {
        if (!F::is_zero(rows_[r][j])) v[j] -= factor * rows_[r][j];
      }
    }
  }

  bool contains(Vec v) const {
    reduce(v);
    for (auto &c : v)
      if (!F::is_zero(c)) return false;
    return true;
  }

  /// Adds v to the span; returns true when the rank grew.
  bool add(Vec v) {
    if (v.size() != cols_) throw std::invalid_argument("RowSpan: wrong vector size");
    reduce(v);
    unsigned p = cols_;
    for (unsigned j = 0; j < cols_; ++j) {
      if (!F::is_zero(v[j])) {
        p = j;
        break;
      }
    }
    if (p == cols_) return false;
    Scalar inv = field_.one() / v[p];
    for (unsigned j = p; j < cols_; ++j)
      if (!F::is_zero(v[j])) v[j] = v[j] * inv;
    // clear the new pivot column in existing rows
    for (size_t r = 0; r < rows_.size(); ++r) {
      const Scalar &c = rows_[r][p];
      if (F::is_zero(c)) continue;
      Scalar factor = c;
      for (unsigned j = p; j < cols_; ++j)
        if (!F::is_zero(v[j])) rows_[r][j] -= factor * v[j];
    }
    // insert keeping pivots ascending
    size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
    rows_.insert(rows_.begin() + static_cast<long>(pos), std::move(v));
    pivots_.insert(pivots_.begin() + static_cast<long>(pos), p);
    return true;
  }

  friend bool operator==(const RowSpan &a, const RowSpan &b) {
    if (!(a.field_ == b.field_) || a.cols_ != b.cols_) return false;
    if (a.pivots_ != b.pivots_) return false;
    for (size_t r = 0; r < a.rows_.size(); ++r)
      for (unsigned j = 0; j < a.cols_; ++j)
        if (!(a.rows_[r][j] == b.rows_[r][j])) return false;
    return true;
  }

private:
  F field_;
  unsigned cols_;
  std::vector<Vec> rows_;
  std::vector<unsigned> pivots_;
};

/// Rank of a list of vectors.
template <class F>
unsigned rank_of(const F &field, unsigned cols,
                 const std::vector<std::vector<typename F::Scalar>> &vecs) {
  RowSpan<F> span(field, cols);
  for (auto &v : vecs) span.add(v);
  return span.rank();
}

/// Expresses `target` as a linear combination of `vecs` when possible,
/// returning the coefficients.
template <class F>
std::optional<std::vector<typename F::Scalar>>
express_in_span(const F &field, unsigned cols,
                const std::vector<std::vector<typename F::Scalar>> &vecs,
                std::vector<typename F::Scalar> target) {
  using Scalar = typename F::Scalar;
  // augment each vector with bookkeeping columns
  unsigned n = static_cast<unsigned>(vecs.size());
  RowSpan<F> span(field, cols + n);
  for (unsigned i = 0; i < n; ++i) {
    std::vector<Scalar> row(cols + n, field.zero());
    for (unsigned j = 0; j < cols; ++j) row[j] = vecs[i][j];
    row[cols + i] = field.one();
    span.add(std::move(row));
  }
  std::vector<Scalar> t(cols + n, field.zero());
  for (unsigned j = 0; j < cols; ++j) t[j] = target[j];
  span.reduce(t);
  for (unsigned j = 0; j < cols; ++j)
    if (!F::is_zero(t[j])) return std::nullopt;
  // the residue in the bookkeeping columns is minus the combination
  std::vector<Scalar> coeffs(n, field.zero());
  for (unsigned i = 0; i < n; ++i) coeffs[i] = -t[cols + i];
  return coeffs;
}

/// A subspace of a coordinate space, stored via its canonical reduced
/// row echelon basis.
template <class F> class Subspace {
public:
  using Scalar = typename F::Scalar;
  using Vec = std::vector<Scalar>;

  Subspace(F field, unsigned parent_dim)
      : parent_dim_(parent_dim), span_(std::move(field), parent_dim) {}

  static Subspace span_of(F field, unsigned parent_dim, const std::vector<Vec> &vecs) {
    Subspace s(std::move(field), parent_dim);
    for (auto &v : vecs) s.span_.add(v);
    return s;
  }
  static Subspace whole(F field, unsigned parent_dim) {
    Subspace s(field, parent_dim);
    for (unsigned i = 0; i < parent_dim; ++i) {
      Vec e(parent_dim, field.zero());
      e[i] = field.one();
      s.span_.add(std::move(e));
    }
    return s;
  }

  const F &field() const { return span_.field(); }
  unsigned parent_dim() const { return parent_dim_; }
  unsigned dim() const { return span_.rank(); }
  unsigned codim() const { return parent_dim_ - dim(); }
  bool is_zero() const { return dim() == 0; }
  const std::vector<Vec> &basis() const { return span_.rows(); }
  const std::vector<unsigned> &pivots() const { return span_.pivots(); }

  bool add(Vec v) { return span_.add(std::move(v)); }
  bool contains(const Vec &v) const { return span_.contains(v); }
  bool contains(const Subspace &o) const {
    for (auto &row : o.basis())
      if (!contains(row)) return false;
    return true;
  }
  void reduce(Vec &v) const { span_.reduce(v); }

  friend Subspace operator+(const Subspace &a, const Subspace &b) {
    if (a.parent_dim_ != b.parent_dim_)
      throw std::invalid_argument("Subspace: mismatched parent dimensions");
    Subspace s = a;
    for (auto &row : b.basis()) s.add(row);
    return s;
  }

  friend bool operator==(const Subspace &a, const Subspace &b) {
    return a.parent_dim_ == b.parent_dim_ && a.span_ == b.span_;
  }
  friend bool operator!=(const Subspace &a, const Subspace &b) { return !(a == b); }

private:
  unsigned parent_dim_;
  RowSpan<F> span_;
};

} // namespace separative
