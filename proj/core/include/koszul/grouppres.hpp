#pragma once

// H_psi = T(V)#G / I(Alt(v_1..v_p) - psi(v_1..v_p)): psi on the wedge basis,
// the splittings V = M_g + L_g, equivariance, the boundary identity for psi_g, the component
// criterion, the invariant-form construction of psi, and the Koszul
// differential on exterior powers.
//
// Multilinear identities are checked on strictly increasing basis tuples
// only: both sides are multilinear and alternating in their arguments, so a
// basis check is a proof for all vectors.

#include "koszul/filtered.hpp"

#include <map>

namespace koszul {

/// Increasing p-tuples of {0..n-1} in lexicographic order.
class WedgeBasis {
 public:
  WedgeBasis(std::size_t n, std::size_t p);
  std::size_t n() const { return n_; }
  std::size_t p() const { return p_; }
  std::size_t size() const { return tuples_.size(); }
  const std::vector<int>& tuple(std::size_t i) const { return tuples_[i]; }
  const std::vector<std::vector<int>>& tuples() const { return tuples_; }
  /// Position of an increasing tuple; throws std::out_of_range otherwise.
  std::size_t index(const std::vector<int>& t) const;

 private:
  std::size_t n_, p_;
  std::vector<std::vector<int>> tuples_;
  std::map<std::vector<int>, std::size_t> index_;
};

/// Lambda^p(a): entry (J, I) = det a[J, I], the e_J coefficient of a e_I.
MatrixS wedge_power(const MatrixS& a, std::size_t p);

/// Alt(e_{l_1}, ..., e_{l_k}) (x) 1 in degree-k component coordinates.
SparseVector alternator(const TensorContext& ctx, const std::vector<int>& letters);

/// psi = sum_g psi_g g, each psi_g stored on the wedge basis of Lambda^p V.
struct PsiMap {
  std::size_t dimV = 0;
  std::size_t p = 0;
  std::vector<std::vector<Scalar>> values;  // values[g][tuple index]

  PsiMap() = default;
  /// The zero map.
  PsiMap(std::size_t dim, std::size_t p_, std::size_t group_order);
  std::size_t group_order() const { return values.size(); }
  bool is_zero() const;
  Scalar& at(int g, std::size_t t) { return values[g][t]; }
  const Scalar& at(int g, std::size_t t) const { return values[g][t]; }
  friend bool operator==(const PsiMap&, const PsiMap&) = default;
};

struct ElementSplitting {
  int g = 0;
  Subspace M;  // Image(Id - (-1)^p g)
  Subspace L;  // Ker(Id - (-1)^p g)
  std::size_t a = 0;
  /// Columns: RREF basis of M, then of L.
  MatrixS adapted;
};

struct GDecomposition {
  std::size_t p = 0;
  /// For odd p the sign makes M_g differ from Image(Id - g).
  bool odd_p = false;
  std::vector<ElementSplitting> per_g;
};

GDecomposition decompose(const GroupData& group, std::size_t p);

/// P = closure of Alt(e_I) (x) 1 - sum_g psi_g(e_I) g over increasing I; N = p.
/// No equivariance check here; a non-equivariant psi shows up as a failure of (I).
FilteredPresentation build_H_psi(ContextPtr ctx, const PsiMap& psi);

/// psi(rho(g) w) = g psi(w) g^{-1}: psi_h(rho(g) e_I) = psi_{g^{-1} h g}(e_I).
bool check_equivariance(const GroupData& group, const PsiMap& psi);

/// sum_i (-1)^i psi_g(v_1..^v_i..v_{p+1}) (Id - (-1)^p g)(v_i) = 0 for every g.
bool check_identity_41(const GroupData& group, const PsiMap& psi);

struct ComponentRow {
  int g = 0;
  std::size_t a = 0;
  std::size_t i = 0;  // Lambda^i(M_g) (x) Lambda^{p-i}(L_g)
  bool allowed = false;  // i == a(g)
  bool vanishes = false;
  friend bool operator==(const ComponentRow&, const ComponentRow&) = default;
};

struct Theorem44Report {
  bool equivariant = false;
  bool components_ok = false;
  bool odd_p = false;
  std::vector<ComponentRow> table;
  bool holds() const { return equivariant && components_ok; }
  friend bool operator==(const Theorem44Report&, const Theorem44Report&) = default;
};

/// psi_g(b_J) for the adapted wedge basis b_J.
std::vector<Scalar> adapted_values(const ElementSplitting& s, std::size_t p, const std::vector<Scalar>& psi_g);
Theorem44Report theorem_44_verdict(const GroupData& group, const PsiMap& psi);

class NotInvariant : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// phi(rho(g) w) = phi(w) for all g.
bool is_invariant_form(const GroupData& group, std::size_t p, const std::vector<Scalar>& phi);

/// psi_g = m(g) phi on Lambda^{a(g)}(M_g) (x) Lambda^{p-a(g)}(L_g), zero on the other components.
/// m is given per element and must be constant on conjugacy classes.
PsiMap build_psi_corollary45(const GroupData& group, std::size_t p, const std::vector<Scalar>& phi,
                             const std::vector<Scalar>& m);

/// p = 2, phi = omega; omega must be alternating and nondegenerate.
PsiMap build_symplectic_reflection(const GroupData& group, const MatrixS& omega, const std::vector<Scalar>& m);

/// Per-class values expanded to a per-element vector.
std::vector<Scalar> class_function(const GroupData& group, const std::vector<Scalar>& class_values);

/// Matrix of d^p_E : Lambda^p(E*) -> Lambda^{p+1}(E*) (x) E on column vectors.
/// Columns: p-tuples. Rows: (K, j) -> K * dimE + j for (p+1)-tuples K.
MatrixS koszul_differential(std::size_t dimE, std::size_t p);

/// For V = M + L (M coordinates first), the columns of d^{r+s}_V indexed by
/// Lambda^r(M*) (x) Lambda^s(L*), and d^r_M (x) Id + (-1)^r Id (x) d^s_L in the same basis.
std::pair<MatrixS, MatrixS> leibniz_sides(std::size_t dimM, std::size_t dimL, std::size_t r, std::size_t s);

}  // namespace koszul
