#pragma once

// Exact linear algebra over Scalar: sparse vectors, dense matrices, and
// subspaces held in canonical reduced row echelon form.

#include "koszul/scalar.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace koszul {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Sparse vector: strictly increasing indices, no explicit zeros.
class SparseVector {
 public:
  using Entry = std::pair<std::size_t, Scalar>;

  SparseVector() = default;
  explicit SparseVector(std::vector<Entry> entries);  // sorts and merges duplicates
  static SparseVector unit(std::size_t index, Scalar value = Scalar(1));

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::size_t leading_index() const { return entries_.front().first; }
  const Scalar& leading_value() const { return entries_.front().second; }
  /// Value at index (zero when absent).
  Scalar at(std::size_t index) const;
  const Scalar* find(std::size_t index) const;

  SparseVector& operator*=(const Scalar& c);
  /// this += c * other
  void axpy(const Scalar& c, const SparseVector& other);
  SparseVector shifted(std::ptrdiff_t offset) const;

  friend SparseVector operator+(const SparseVector& a, const SparseVector& b);
  friend SparseVector operator-(const SparseVector& a, const SparseVector& b);
  friend SparseVector operator*(const Scalar& c, SparseVector v) { return v *= c; }
  friend bool operator==(const SparseVector& a, const SparseVector& b);

  /// Appends an entry whose index exceeds every stored index.
  void push_back(std::size_t index, Scalar value);

 private:
  std::vector<Entry> entries_;
};

/// Dense row-major matrix.
class MatrixS {
 public:
  MatrixS() = default;
  MatrixS(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  MatrixS(std::size_t rows, std::size_t cols, std::vector<Scalar> entries);
  static MatrixS identity(std::size_t n);
  static MatrixS from_rows(std::size_t cols, std::span<const SparseVector> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  SparseVector row(std::size_t r) const;
  std::vector<SparseVector> sparse_rows() const;
  SparseVector column(std::size_t c) const;
  MatrixS transposed() const;

  friend MatrixS operator*(const MatrixS& a, const MatrixS& b);
  friend MatrixS operator+(const MatrixS& a, const MatrixS& b);
  friend MatrixS operator-(const MatrixS& a, const MatrixS& b);
  friend bool operator==(const MatrixS& a, const MatrixS& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Matrix with sparse rows; the matrix of a linear map acts on row vectors
/// from the left (image of basis vector i is row i).
struct SparseMatrix {
  std::size_t cols = 0;
  std::vector<SparseVector> rows;

  std::size_t row_count() const { return rows.size(); }
  /// (this then other): row i of result is row i of this times other.
  SparseMatrix then(const SparseMatrix& other) const;
  bool is_zero() const;
  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator*(const Scalar& c, const SparseMatrix& m);
  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);
};

/// Row vector times sparse matrix.
SparseVector apply(const SparseVector& v, const SparseMatrix& m);

class Subspace;

/// Incremental Gaussian elimination. Rows are kept in echelon form with
/// distinct pivots; finish() back-substitutes into canonical RREF.
class EchelonBuilder {
 public:
  explicit EchelonBuilder(std::size_t ambient);
  /// Starts from an existing canonical basis.
  explicit EchelonBuilder(const Subspace& start);

  /// Adds v to the span; returns true when the rank grew.
  bool insert(const SparseVector& v);
  /// Residual of v after elimination against the current rows.
  SparseVector residual(const SparseVector& v);
  std::size_t rank() const { return rows_.size(); }
  std::size_t ambient() const { return ambient_; }
  Subspace finish() &&;

 private:
  SparseVector eliminate(const SparseVector& v);

  std::size_t ambient_;
  std::vector<SparseVector> rows_;
  std::vector<int> pivot_row_;
  // scratch space for elimination
  std::vector<Scalar> dense_;
  std::vector<char> touched_;
};

/// Subspace of Scalar^ambient stored as its canonical RREF basis. Two
/// subspaces are equal iff their bases are identical.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient) {}
  static Subspace full(std::size_t ambient);
  /// Rows must already be a canonical RREF basis (not re-checked in release builds).
  static Subspace from_rref_rows(std::size_t ambient, std::vector<SparseVector> rows);
  static Subspace span(std::size_t ambient, std::span<const SparseVector> vectors);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }
  bool is_zero() const { return rows_.empty(); }
  const std::vector<SparseVector>& rows() const { return rows_; }
  std::vector<std::size_t> pivots() const;
  MatrixS basis() const { return MatrixS::from_rows(ambient_, rows_); }

  /// v minus its projection along the pivot coordinates; zero iff v is in the span.
  SparseVector reduce(const SparseVector& v) const;
  bool contains(const SparseVector& v) const;
  bool contains(const Subspace& other) const;
  /// Coefficients of v in the basis (v must lie in the subspace).
  std::vector<Scalar> coordinates(const SparseVector& v) const;
  /// Intersection with the coordinate subspace spanned by indices >= first.
  Subspace intersect_tail(std::size_t first) const;
  /// Embeds in a larger ambient space by shifting coordinates.
  Subspace shifted(std::size_t offset, std::size_t new_ambient) const;
  bool is_rref() const;

  friend bool operator==(const Subspace& a, const Subspace& b);
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  friend class EchelonBuilder;
  std::size_t ambient_ = 0;
  std::vector<SparseVector> rows_;
  std::vector<std::size_t> pivots_;
  const SparseVector* row_with_pivot(std::size_t col) const;
};

/// Sum of scaled vectors.
SparseVector linear_combination(std::span<const std::pair<Scalar, const SparseVector*>> terms);

/// Row space of m.
Subspace rref(const MatrixS& m);
Subspace sum(const Subspace& s, const Subspace& t);
/// Intersection via residuals of t against s and their left kernel.
Subspace intersect(const Subspace& s, const Subspace& t);
/// Intersection via the Zassenhaus block construction.
Subspace intersect_zassenhaus(const Subspace& s, const Subspace& t);
/// {x : m x = 0}
Subspace kernel(const MatrixS& m);
/// Column space of m.
Subspace image(const MatrixS& m);
/// {c : sum_i c_i vectors[i] = 0} inside Scalar^{vectors.size()}.
Subspace left_kernel(std::size_t ambient, std::span<const SparseVector> vectors);
std::size_t rank(const MatrixS& m);
std::size_t rank(const SparseMatrix& m);
/// Square matrices only.
Scalar determinant(MatrixS m);
/// Throws DimensionError when m is singular or not square.
MatrixS inverse(const MatrixS& m);
bool contains(const Subspace& s, const SparseVector& v);
bool equals(const Subspace& s, const Subspace& t);

}  // namespace koszul
