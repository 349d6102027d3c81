#include "koszul/linalg.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace koszul {

namespace {

void merge_sorted_entries(std::vector<SparseVector::Entry>& entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<SparseVector::Entry> out;
  out.reserve(entries.size());
  for (auto& e : entries) {
    if (!out.empty() && out.back().first == e.first) {
      out.back().second += e.second;
    } else {
      if (!out.empty() && out.back().second.is_zero()) out.pop_back();
      out.push_back(std::move(e));
    }
  }
  if (!out.empty() && out.back().second.is_zero()) out.pop_back();
  entries = std::move(out);
}

}  // namespace

// ---------------------------------------------------------------- SparseVector

SparseVector::SparseVector(std::vector<Entry> entries) : entries_(std::move(entries)) {
  merge_sorted_entries(entries_);
}

SparseVector SparseVector::unit(std::size_t index, Scalar value) {
  SparseVector v;
  if (!value.is_zero()) v.entries_.emplace_back(index, std::move(value));
  return v;
}

const Scalar* SparseVector::find(std::size_t index) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, std::size_t i) { return e.first < i; });
  if (it == entries_.end() || it->first != index) return nullptr;
  return &it->second;
}

Scalar SparseVector::at(std::size_t index) const {
  const Scalar* s = find(index);
  return s ? *s : Scalar(0);
}

SparseVector& SparseVector::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    entries_.clear();
    return *this;
  }
  for (auto& e : entries_) e.second *= c;
  return *this;
}

void SparseVector::axpy(const Scalar& c, const SparseVector& other) {
  if (c.is_zero() || other.empty()) return;
  std::vector<Entry> out;
  out.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == entries_.end() || b->first < a->first) {
      out.emplace_back(b->first, c * b->second);
      ++b;
    } else {
      a->second.add_mul(c, b->second);
      if (!a->second.is_zero()) out.push_back(std::move(*a));
      ++a;
      ++b;
    }
  }
  entries_ = std::move(out);
}

SparseVector SparseVector::shifted(std::ptrdiff_t offset) const {
  SparseVector v = *this;
  for (auto& e : v.entries_) e.first = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(e.first) + offset);
  return v;
}

SparseVector operator+(const SparseVector& a, const SparseVector& b) {
  SparseVector r = a;
  r.axpy(Scalar(1), b);
  return r;
}

SparseVector operator-(const SparseVector& a, const SparseVector& b) {
  SparseVector r = a;
  r.axpy(Scalar(-1), b);
  return r;
}

bool operator==(const SparseVector& a, const SparseVector& b) { return a.entries_ == b.entries_; }

void SparseVector::push_back(std::size_t index, Scalar value) {
  if (value.is_zero()) return;
  entries_.emplace_back(index, std::move(value));
}

SparseVector linear_combination(std::span<const std::pair<Scalar, const SparseVector*>> terms) {
  std::vector<SparseVector::Entry> all;
  std::size_t total = 0;
  for (const auto& t : terms) total += t.second->size();
  all.reserve(total);
  for (const auto& [c, v] : terms) {
    if (c.is_zero()) continue;
    for (const auto& e : v->entries()) all.emplace_back(e.first, c * e.second);
  }
  return SparseVector(std::move(all));
}

// ---------------------------------------------------------------- MatrixS

MatrixS::MatrixS(std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) throw DimensionError("matrix entry count does not match shape");
}

MatrixS MatrixS::identity(std::size_t n) {
  MatrixS m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

MatrixS MatrixS::from_rows(std::size_t cols, std::span<const SparseVector> rows) {
  MatrixS m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [c, v] : rows[r].entries()) m(r, c) = v;
  return m;
}

SparseVector MatrixS::row(std::size_t r) const {
  SparseVector v;
  for (std::size_t c = 0; c < cols_; ++c) v.push_back(c, (*this)(r, c));
  return v;
}

std::vector<SparseVector> MatrixS::sparse_rows() const {
  std::vector<SparseVector> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
  return out;
}

SparseVector MatrixS::column(std::size_t c) const {
  SparseVector v;
  for (std::size_t r = 0; r < rows_; ++r) v.push_back(r, (*this)(r, c));
  return v;
}

MatrixS MatrixS::transposed() const {
  MatrixS t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

MatrixS operator*(const MatrixS& a, const MatrixS& b) {
  if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
  MatrixS m(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) m(i, j).add_mul(x, b(k, j));
    }
  return m;
}

MatrixS operator+(const MatrixS& a, const MatrixS& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix sum shape mismatch");
  MatrixS m = a;
  for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] += b.data_[i];
  return m;
}

MatrixS operator-(const MatrixS& a, const MatrixS& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix difference shape mismatch");
  MatrixS m = a;
  for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] -= b.data_[i];
  return m;
}

bool operator==(const MatrixS& a, const MatrixS& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

// ---------------------------------------------------------------- SparseMatrix

SparseVector apply(const SparseVector& v, const SparseMatrix& m) {
  std::vector<std::pair<Scalar, const SparseVector*>> terms;
  terms.reserve(v.size());
  for (const auto& [i, c] : v.entries()) {
    if (i >= m.rows.size()) throw DimensionError("vector longer than matrix row count");
    terms.emplace_back(c, &m.rows[i]);
  }
  return linear_combination(terms);
}

SparseMatrix SparseMatrix::then(const SparseMatrix& other) const {
  SparseMatrix out;
  out.cols = other.cols;
  out.rows.reserve(rows.size());
  for (const auto& r : rows) out.rows.push_back(apply(r, other));
  return out;
}

bool SparseMatrix::is_zero() const {
  return std::all_of(rows.begin(), rows.end(), [](const SparseVector& r) { return r.empty(); });
}

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows.size() != b.rows.size() || a.cols != b.cols) throw DimensionError("sparse matrix shape mismatch");
  SparseMatrix m = a;
  for (std::size_t i = 0; i < m.rows.size(); ++i) m.rows[i].axpy(Scalar(1), b.rows[i]);
  return m;
}

SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows.size() != b.rows.size() || a.cols != b.cols) throw DimensionError("sparse matrix shape mismatch");
  SparseMatrix m = a;
  for (std::size_t i = 0; i < m.rows.size(); ++i) m.rows[i].axpy(Scalar(-1), b.rows[i]);
  return m;
}

SparseMatrix operator*(const Scalar& c, const SparseMatrix& m) {
  SparseMatrix r = m;
  for (auto& row : r.rows) row *= c;
  return r;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) { return a.cols == b.cols && a.rows == b.rows; }

// ---------------------------------------------------------------- EchelonBuilder

EchelonBuilder::EchelonBuilder(std::size_t ambient)
    : ambient_(ambient), pivot_row_(ambient, -1), dense_(), touched_() {}

EchelonBuilder::EchelonBuilder(const Subspace& start) : EchelonBuilder(start.ambient_dim()) {
  rows_ = start.rows();
  for (std::size_t i = 0; i < rows_.size(); ++i) pivot_row_[rows_[i].leading_index()] = static_cast<int>(i);
}

SparseVector EchelonBuilder::eliminate(const SparseVector& v) {
  if (v.empty()) return {};
  if (dense_.size() != ambient_) {
    dense_.assign(ambient_, Scalar(0));
    touched_.assign(ambient_, 0);
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> heap;
  std::vector<std::size_t> seen;
  for (const auto& [i, c] : v.entries()) {
    if (i >= ambient_) throw DimensionError("vector index exceeds ambient dimension");
    dense_[i] = c;
    touched_[i] = 1;
    heap.push(i);
    seen.push_back(i);
  }
  SparseVector out;
  while (!heap.empty()) {
    std::size_t i = heap.top();
    heap.pop();
    if (dense_[i].is_zero()) continue;
    int r = pivot_row_[i];
    if (r < 0) {
      out.push_back(i, dense_[i]);
      continue;
    }
    Scalar c = dense_[i];
    for (const auto& [k, val] : rows_[r].entries()) {
      dense_[k].sub_mul(c, val);
      if (!touched_[k]) {
        touched_[k] = 1;
        heap.push(k);
        seen.push_back(k);
      }
    }
  }
  for (std::size_t i : seen) {
    dense_[i] = Scalar(0);
    touched_[i] = 0;
  }
  return out;
}

SparseVector EchelonBuilder::residual(const SparseVector& v) { return eliminate(v); }

bool EchelonBuilder::insert(const SparseVector& v) {
  SparseVector r = eliminate(v);
  if (r.empty()) return false;
  Scalar inv = r.leading_value().inverse();
  r *= inv;
  pivot_row_[r.leading_index()] = static_cast<int>(rows_.size());
  rows_.push_back(std::move(r));
  return true;
}

Subspace EchelonBuilder::finish() && {
  std::sort(rows_.begin(), rows_.end(),
            [](const SparseVector& a, const SparseVector& b) { return a.leading_index() < b.leading_index(); });
  for (std::size_t i = 0; i < rows_.size(); ++i) pivot_row_[rows_[i].leading_index()] = static_cast<int>(i);
  // Back-substitution from the last pivot upwards; rows below i are already reduced.
  std::vector<std::pair<Scalar, const SparseVector*>> terms;
  for (std::size_t i = rows_.size(); i-- > 0;) {
    terms.clear();
    bool hit = false;
    for (std::size_t e = 1; e < rows_[i].entries().size(); ++e) {
      const auto& [col, val] = rows_[i].entries()[e];
      int r = pivot_row_[col];
      if (r >= 0) {
        if (!hit) terms.emplace_back(Scalar(1), &rows_[i]);
        hit = true;
        terms.emplace_back(-val, &rows_[r]);
      }
    }
    if (hit) rows_[i] = linear_combination(terms);
  }
  Subspace s(ambient_);
  s.rows_ = std::move(rows_);
  s.pivots_.reserve(s.rows_.size());
  for (const auto& r : s.rows_) s.pivots_.push_back(r.leading_index());
  return s;
}

// ---------------------------------------------------------------- Subspace

Subspace Subspace::full(std::size_t ambient) {
  std::vector<SparseVector> rows;
  rows.reserve(ambient);
  for (std::size_t i = 0; i < ambient; ++i) rows.push_back(SparseVector::unit(i));
  return from_rref_rows(ambient, std::move(rows));
}

Subspace Subspace::from_rref_rows(std::size_t ambient, std::vector<SparseVector> rows) {
  Subspace s(ambient);
  s.rows_ = std::move(rows);
  s.pivots_.reserve(s.rows_.size());
  for (const auto& r : s.rows_) s.pivots_.push_back(r.leading_index());
#ifndef NDEBUG
  if (!s.is_rref()) throw std::logic_error("from_rref_rows: rows are not in canonical RREF");
#endif
  return s;
}

Subspace Subspace::span(std::size_t ambient, std::span<const SparseVector> vectors) {
  EchelonBuilder b(ambient);
  for (const auto& v : vectors) b.insert(v);
  return std::move(b).finish();
}

std::vector<std::size_t> Subspace::pivots() const { return pivots_; }

const SparseVector* Subspace::row_with_pivot(std::size_t col) const {
  auto it = std::lower_bound(pivots_.begin(), pivots_.end(), col);
  if (it == pivots_.end() || *it != col) return nullptr;
  return &rows_[static_cast<std::size_t>(it - pivots_.begin())];
}

SparseVector Subspace::reduce(const SparseVector& v) const {
  std::vector<std::pair<Scalar, const SparseVector*>> terms;
  terms.emplace_back(Scalar(1), &v);
  bool hit = false;
  for (const auto& [i, c] : v.entries()) {
    if (i >= ambient_) throw DimensionError("vector index exceeds ambient dimension");
    if (const SparseVector* r = row_with_pivot(i)) {
      terms.emplace_back(-c, r);
      hit = true;
    }
  }
  if (!hit) return v;
  return linear_combination(terms);
}

bool Subspace::contains(const SparseVector& v) const { return reduce(v).empty(); }

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw DimensionError("subspace ambient dimensions differ");
  return std::all_of(other.rows_.begin(), other.rows_.end(), [&](const SparseVector& r) { return contains(r); });
}

std::vector<Scalar> Subspace::coordinates(const SparseVector& v) const {
  std::vector<Scalar> c(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) c[i] = v.at(pivots_[i]);
  return c;
}

Subspace Subspace::intersect_tail(std::size_t first) const {
  auto it = std::lower_bound(pivots_.begin(), pivots_.end(), first);
  std::vector<SparseVector> rows(rows_.begin() + (it - pivots_.begin()), rows_.end());
  return from_rref_rows(ambient_, std::move(rows));
}

Subspace Subspace::shifted(std::size_t offset, std::size_t new_ambient) const {
  if (offset + ambient_ > new_ambient) throw DimensionError("shift exceeds new ambient dimension");
  std::vector<SparseVector> rows;
  rows.reserve(rows_.size());
  for (const auto& r : rows_) rows.push_back(r.shifted(static_cast<std::ptrdiff_t>(offset)));
  return from_rref_rows(new_ambient, std::move(rows));
}

bool Subspace::is_rref() const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto& r = rows_[i];
    if (r.empty() || !r.leading_value().is_one()) return false;
    if (r.entries().back().first >= ambient_) return false;
    if (i > 0 && pivots_[i - 1] >= pivots_[i]) return false;
    for (std::size_t e = 1; e < r.entries().size(); ++e)
      if (std::binary_search(pivots_.begin(), pivots_.end(), r.entries()[e].first)) return false;
  }
  return true;
}

bool operator==(const Subspace& a, const Subspace& b) { return a.ambient_ == b.ambient_ && a.rows_ == b.rows_; }

// ---------------------------------------------------------------- free functions

Subspace rref(const MatrixS& m) {
  auto rows = m.sparse_rows();
  return Subspace::span(m.cols(), rows);
}

Subspace sum(const Subspace& s, const Subspace& t) {
  if (s.ambient_dim() != t.ambient_dim()) throw DimensionError("sum: ambient dimensions differ");
  if (t.dim() > s.dim()) return sum(t, s);
  EchelonBuilder b(s);
  bool grew = false;
  for (const auto& r : t.rows()) grew = b.insert(r) || grew;
  if (!grew) return s;
  return std::move(b).finish();
}

Subspace left_kernel(std::size_t ambient, std::span<const SparseVector> vectors) {
  const std::size_t n = vectors.size();
  EchelonBuilder b(ambient + n);
  for (std::size_t i = 0; i < n; ++i) {
    SparseVector aug = vectors[i];
    aug.push_back(ambient + i, Scalar(1));
    b.insert(aug);
  }
  Subspace full = std::move(b).finish();
  Subspace tail = full.intersect_tail(ambient);
  std::vector<SparseVector> rows;
  rows.reserve(tail.dim());
  for (const auto& r : tail.rows()) rows.push_back(r.shifted(-static_cast<std::ptrdiff_t>(ambient)));
  return Subspace::from_rref_rows(n, std::move(rows));
}

Subspace intersect(const Subspace& s, const Subspace& t) {
  if (s.ambient_dim() != t.ambient_dim()) throw DimensionError("intersect: ambient dimensions differ");
  if (s.is_zero() || t.is_zero()) return Subspace(s.ambient_dim());
  if (t.dim() > s.dim()) return intersect(t, s);
  std::vector<SparseVector> residuals;
  residuals.reserve(t.dim());
  for (const auto& r : t.rows()) residuals.push_back(s.reduce(r));
  Subspace combos = left_kernel(s.ambient_dim(), residuals);
  std::vector<SparseVector> vecs;
  vecs.reserve(combos.dim());
  std::vector<std::pair<Scalar, const SparseVector*>> terms;
  for (const auto& c : combos.rows()) {
    terms.clear();
    for (const auto& [j, coef] : c.entries()) terms.emplace_back(coef, &t.rows()[j]);
    vecs.push_back(linear_combination(terms));
  }
  return Subspace::span(s.ambient_dim(), vecs);
}

Subspace intersect_zassenhaus(const Subspace& s, const Subspace& t) {
  if (s.ambient_dim() != t.ambient_dim()) throw DimensionError("intersect: ambient dimensions differ");
  const std::size_t a = s.ambient_dim();
  EchelonBuilder b(2 * a);
  for (const auto& r : s.rows()) {
    SparseVector both = r;
    for (const auto& [i, c] : r.entries()) both.push_back(a + i, c);
    b.insert(both);
  }
  for (const auto& r : t.rows()) b.insert(r);
  Subspace tail = std::move(b).finish().intersect_tail(a);
  std::vector<SparseVector> rows;
  for (const auto& r : tail.rows()) rows.push_back(r.shifted(-static_cast<std::ptrdiff_t>(a)));
  return Subspace::from_rref_rows(a, std::move(rows));
}

Subspace kernel(const MatrixS& m) {
  std::vector<SparseVector> cols;
  cols.reserve(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) cols.push_back(m.column(c));
  return left_kernel(m.rows(), cols);
}

Subspace image(const MatrixS& m) {
  std::vector<SparseVector> cols;
  cols.reserve(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) cols.push_back(m.column(c));
  return Subspace::span(m.rows(), cols);
}

std::size_t rank(const MatrixS& m) { return rref(m).dim(); }

std::size_t rank(const SparseMatrix& m) {
  EchelonBuilder b(m.cols);
  for (const auto& r : m.rows) b.insert(r);
  return b.rank();
}

Scalar determinant(MatrixS m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  Scalar det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m(piv, c).is_zero()) ++piv;
    if (piv == n) return Scalar(0);
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(m(piv, k), m(c, k));
      det = -det;
    }
    det *= m(c, c);
    const Scalar inv = Scalar(1) / m(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m(r, c).is_zero()) continue;
      const Scalar f = m(r, c) * inv;
      for (std::size_t k = c; k < n; ++k) m(r, k) -= f * m(c, k);
    }
  }
  return det;
}

MatrixS inverse(const MatrixS& m) {
  if (m.rows() != m.cols()) throw DimensionError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  // rref of [m | I]
  std::vector<SparseVector> rows;
  for (std::size_t r = 0; r < n; ++r) {
    SparseVector v = m.row(r);
    v.push_back(n + r, Scalar(1));
    rows.push_back(std::move(v));
  }
  Subspace s = Subspace::span(2 * n, rows);
  if (s.intersect_tail(n).dim() != 0) throw DimensionError("singular matrix");
  MatrixS out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (const auto& [i, c] : s.rows()[r].entries())
      if (i >= n) out(r, i - n) = c;
  return out;
}

bool contains(const Subspace& s, const SparseVector& v) { return s.contains(v); }
bool equals(const Subspace& s, const Subspace& t) { return s == t; }

}  // namespace koszul
