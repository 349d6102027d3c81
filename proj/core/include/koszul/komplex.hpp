#pragma once

// The bimodule N-complex U (x)_K W_n (x)_K U with d = d_l - q^{n-1} d_r, its
// contraction along zeta (the Koszul resolution of U), and the wedge-basis
// formulas for H_psi, all truncated at total filtration degree D.
//
// Model: U is free as a right K-module on a filtered basis B, and
// V^n # K is free as a right K-module on the words, so
//   U (x)_K (V^n # K) (x)_K U  =  B (x) V^n (x) U
// via b g (x) (w, h) (x) c -> b (x) rho(g) w (x) (g h) c. U (x)_K W_n (x)_K U is the
// span of the images of b (x) x (x) c for x in a k-basis of W_n.
//
// Window rule: d_l and d_r preserve total filtration degree, so every
// position of the subcomplex of total degree <= t only involves U^{<=t}.
// Exactness is reported for every t <= D; the asserted window is t <= D - N,
// where even an N-fold composite stays inside the represented range.

#include "koszul/grouppres.hpp"

namespace koszul {

class DegreeOverflow : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class NotFreeOverK : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// U^{<=D} = F^D / J^D with the non-pivot coordinates of J^D as basis.
class TruncatedU {
 public:
  /// shuffle_seed != 0 permutes the order in which the right K-basis is chosen within each degree.
  TruncatedU(const FilteredPresentation& pres, std::size_t D, unsigned shuffle_seed = 0);

  const FilteredPresentation& presentation() const { return pres_; }
  const TensorContext& ctx() const { return *pres_.ctx; }
  std::size_t bound() const { return D_; }
  std::size_t dim() const { return coord_.size(); }
  /// dim U^{<=n}
  std::size_t dim_upto(std::size_t n) const;
  std::size_t degree(std::size_t i) const { return degree_[i]; }
  /// Largest filtration degree present in u (0 for u = 0).
  std::size_t degree_of(const SparseVector& u) const;

  /// Class of x in F^top, in U-basis coordinates.
  SparseVector reduce(const SparseVector& x, std::size_t top) const;
  /// Representative in F^top coordinates (top >= degree_of(u)).
  SparseVector representative(const SparseVector& u, std::size_t top) const;
  /// Product in U; throws DegreeOverflow past D.
  SparseVector multiply(const SparseVector& a, const SparseVector& b) const;
  /// Class of the letter v.
  const SparseVector& letter(std::size_t v) const { return letters_[v]; }
  /// g . e_i
  const SparseVector& group_left(int g, std::size_t i) const { return left_[static_cast<std::size_t>(g) * dim() + i]; }
  /// Class of the word w of length n.
  SparseVector word(std::size_t w, std::size_t n) const;

  /// Right K-basis: U-basis indices b with {e_b g} a basis, filtered by degree.
  const std::vector<std::size_t>& right_basis() const { return B_; }
  struct RightTerm {
    std::size_t b;  // position in right_basis()
    int g;
    Scalar coeff;
  };
  /// u = sum coeff e_{B[b]} g
  std::vector<RightTerm> decompose_right(const SparseVector& u) const;

 private:
  FilteredPresentation pres_;
  std::size_t D_;
  Subspace J_;
  std::vector<std::size_t> coord_;   // U index -> F^D coordinate
  std::vector<long> index_of_;       // F^D coordinate -> U index or -1
  std::vector<std::size_t> degree_;
  std::vector<SparseVector> letters_;
  std::vector<SparseVector> left_;   // g * dim + i
  std::vector<std::size_t> B_;
  Subspace right_aug_;                // [e_B g | tag]
};

/// U (x)_K W_n (x)_K U for all n <= D inside the model B (x) V^n (x) U. Requires phi = phi_0.
class BimoduleComplex {
 public:
  explicit BimoduleComplex(const TruncatedU& U);

  const TruncatedU& U() const { return U_; }
  const TensorContext& ctx() const { return U_.ctx(); }
  std::size_t N() const { return pres().N; }
  std::size_t bound() const { return U_.bound(); }
  const FilteredPresentation& pres() const { return U_.presentation(); }
  const PhiMap& phi() const { return phi_; }
  const HomogeneousAlgebra& A() const { return A_; }

  std::size_t model_index(std::size_t b, std::size_t w, std::size_t n, std::size_t u) const;
  /// Total filtration degree of a model coordinate at level n.
  std::size_t total_degree(std::size_t idx, std::size_t n) const;

  /// a (x) y (x) c in the model, for a, c in U and y in V^n # K (component coordinates).
  SparseVector embed(const SparseVector& a, const SparseVector& y, std::size_t n, const SparseVector& c) const;
  /// e_{B[b]} (x) (row-th basis vector of W_n) (x) e_u
  struct Generator {
    std::size_t b, row, u;
  };
  /// All generators of total degree <= t, b-major.
  std::vector<Generator> generators(std::size_t n, std::size_t t) const;
  SparseVector generator_vector(std::size_t n, const Generator& g) const;
  /// Spanning set of U (x) W_n (x) U in total degree <= t.
  std::vector<SparseVector> spanning(std::size_t n, std::size_t t) const;

  /// Level n -> n-1.
  SparseVector d_left(std::size_t n, const SparseVector& x) const;
  SparseVector d_right(std::size_t n, const SparseVector& x) const;
  /// d_l - q^{n-1} d_r
  SparseVector d(std::size_t n, const SparseVector& x, const Scalar& q) const;
  /// Matrix whose rows are images of the spanning set.
  SparseMatrix d_left_matrix(std::size_t n, std::size_t t) const;
  SparseMatrix d_right_matrix(std::size_t n, std::size_t t) const;
  /// 1 (x) phi^{1,N} (x) 1 and 1 (x) phi^{n-N+1,n} (x) 1 on a generator of level n.
  SparseVector phi_left(std::size_t n, const Generator& g) const;
  SparseVector phi_right(std::size_t n, const Generator& g) const;
  /// mu(x) in U for x at level 0.
  SparseVector augmentation(const SparseVector& x) const;

 private:
  const TruncatedU& U_;
  PhiMap phi_;
  HomogeneousAlgebra A_;
  std::vector<std::vector<TruncatedU::RightTerm>> bv_;  // decomposition of e_{B[b]} v, b * dimV + v
  std::vector<SparseVector> vu_;                        // v e_u, v * dimU + u
  std::vector<SparseVector> mu_;                        // e_{B[b]} e_u, b * dimU + u
};

/// Rank of a set of sparse vectors with arbitrary (large) indices.
std::size_t sparse_rank(std::span<const SparseVector> vectors);

struct NComplexReport {
  std::size_t N = 0, bound = 0;
  std::string q;
  bool dN_zero = true;
  std::optional<std::size_t> failing_level;
  bool commute = true;        // d_l d_r = d_r d_l
  bool factorization = true;  // prod (d_l - q^i d_r) = d_l^N - d_r^N
  bool phi_identity = true;   // d_l^N - d_r^N = 1 (x) (phi^{1,N} - phi^{n-N+1,n}) (x) 1
  bool lands_in_W = true;     // d_l, d_r map U W_n U into U W_{n-1} U
  friend bool operator==(const NComplexReport&, const NComplexReport&) = default;
};

/// q must be a primitive N-th root of unity. Throws if D < N.
NComplexReport check_dN_zero(const BimoduleComplex& cx, const Scalar& q);

struct ContractedSlice {
  std::size_t t = 0;  // total filtration degree bound
  std::vector<std::size_t> w_degrees;
  std::vector<std::size_t> dims;
  std::vector<std::size_t> ranks;  // ranks[i] = rank C_i -> C_{i-1}; ranks[0] = rank of mu
  std::size_t dim_U = 0;
  bool composition_zero = true;
  bool exact = true;  // positions >= 0, with mu
  std::optional<std::size_t> failing_position;
  long euler = 0;     // sum (-1)^i dim C_i - dim U
  bool in_window = false;
  friend bool operator==(const ContractedSlice&, const ContractedSlice&) = default;
};

struct ContractedReport {
  std::size_t N = 0, bound = 0, window = 0;
  std::vector<ContractedSlice> slices;  // t = 0..D
  bool composition_zero = true;
  bool window_exact = true;
  bool all_exact = true;
  friend bool operator==(const ContractedReport&, const ContractedReport&) = default;
};

/// Position i: C_i = U W_{zeta(i)} U; d_l - d_r out of odd positions, sum_t d_l^{N-1-t} d_r^t out of even ones.
SparseVector contracted_d(const BimoduleComplex& cx, std::size_t i, const SparseVector& x);
ContractedReport contracted_complex(const BimoduleComplex& cx);

enum class WedgeForm {
  corrected,  // every ordered choice of removed letters, signed by the rearrangement
  literal     // one increasing choice per subset, first ones to the left, as displayed
};
enum class WedgeParity { odd, even, even_reduced };

/// Image of b (x) e_{i_1} ^ ... ^ e_{i_m} (x) u under the displayed wedge formula (m = |I|),
/// where ^ is identified with Alt (x) 1 in W_m. even_reduced needs p even.
SparseVector wedge_differential(const BimoduleComplex& cx, std::size_t b, const std::vector<int>& I, std::size_t u,
                                WedgeParity parity, WedgeForm form);

/// Rows: wedge formula images of b (x) e_I (x) u over the basis data at position i and total degree <= t.
SparseMatrix wedge_differentials(const BimoduleComplex& cx, std::size_t i, std::size_t t, WedgeParity parity,
                                 WedgeForm form);
/// Rows: contracted_d of the same spanning elements, in the same order.
SparseMatrix contracted_differentials(const BimoduleComplex& cx, std::size_t i, std::size_t t);

}  // namespace koszul
