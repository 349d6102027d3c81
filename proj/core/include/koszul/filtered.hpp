#pragma once

// Filtered algebras U = T(V)#G / I(P) with P inside F^N: condition (I), the
// map phi with P = {x - phi(x)}, condition (J) computed three ways, the
// PBW verdict, and a brute-force check of J^n cap F^{n-1} = J^{n-1}.

#include "koszul/homogeneous.hpp"

#include <optional>
#include <string>

namespace koszul {

class ConditionIViolated : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct FilteredPresentation {
  ContextPtr ctx;
  std::size_t N = 0;
  FilteredSubspace P;
  /// Builder tag ("lie", "down_up", "antisymmetrizer", "h_psi", ...).
  std::string family;

  FilteredPresentation(ContextPtr c, std::size_t n, FilteredSubspace p, std::string fam = {});
  static FilteredPresentation from_generators(ContextPtr c, std::size_t n, std::span<const SparseVector> gens,
                                              std::string fam = {});
};

/// R = pi(P), the top-degree parts.
Subbimodule project_R(const FilteredPresentation& pres);
/// The homogenized algebra A = T(V)#G / I(R).
HomogeneousAlgebra homogenization(const FilteredPresentation& pres);

/// P cap F^{N-1} = 0.
bool check_condition_I(const FilteredPresentation& pres);

/// phi : R -> F^{N-1} with P = {x - phi(x) : x in R}.
class PhiMap {
 public:
  PhiMap(Subbimodule R, std::vector<SparseVector> images);

  const Subbimodule& R() const { return R_; }
  const ContextPtr& context() const { return R_.context(); }
  std::size_t N() const { return R_.degree(); }
  /// phi(R.rows()[k]) in F^{N-1} coordinates.
  const std::vector<SparseVector>& images() const { return images_; }

  /// phi(x) in F^{N-1}; x must lie in R.
  SparseVector apply(const SparseVector& x) const;
  /// phi_j(x) in degree-j coordinates.
  SparseVector component(std::size_t j, const SparseVector& x) const;
  bool is_zero() const;
  /// phi = phi_0
  bool is_phi0() const;
  bool component_is_zero(std::size_t j) const;

  /// phi^{i,i+N-1} = 1^{i-1} (x) phi (x) 1^{j} on x in V^{i-1} R V^{j} (i >= 1).
  /// Result in F^{i-1+N-1+j}.
  SparseVector lifted(std::size_t i, std::size_t j, const SparseVector& x) const;
  /// Degree-(i-1+c+j) component of lifted(i, j, x), i.e. phi_c in slot i.
  SparseVector lifted_component(std::size_t i, std::size_t j, std::size_t c, const SparseVector& x) const;

  /// P rebuilt from (R, phi).
  Subspace rebuild_P() const;

 private:
  Subbimodule R_;
  std::vector<SparseVector> images_;
};

PhiMap build_phi(const FilteredPresentation& pres);

/// x = sum_w r_w (w (x) 1) for x homogeneous of degree n + m; returns r_w (degree n) indexed by w.
std::vector<SparseVector> right_decompose(const TensorContext& ctx, const SparseVector& x, std::size_t n,
                                          std::size_t m);
/// x = sum_u (u (x) 1) s_u for x of degree m + n; returns s_u (degree n) indexed by u.
std::vector<SparseVector> left_decompose(const TensorContext& ctx, const SparseVector& x, std::size_t m,
                                         std::size_t n);

struct ConditionJReport {
  bool direct = false;     // (PV + VP) cap F^N inside P
  bool via_W = false;      // (phi^{1,N} - phi^{2,N+1})(W_{N+1}) inside P
  bool J1 = false;
  bool J2 = false;         // false when J1 fails (not evaluated)
  bool J3 = false;
  bool J2_evaluated = false;
  std::optional<std::size_t> J2_failing_degree;  // first j violating the middle family
  bool holds() const { return direct; }
  /// Element of W_{N+1} witnessing the first failure, and its image (in F^N).
  std::vector<Term> witness;
  std::vector<Term> witness_image;
  friend bool operator==(const ConditionJReport&, const ConditionJReport&) = default;
};

/// Runs the three strategies; throws std::logic_error if they disagree.
ConditionJReport check_condition_J(const FilteredPresentation& pres);
bool check_condition_J_direct(const FilteredPresentation& pres);
bool check_condition_J_via_W(const FilteredPresentation& pres, const PhiMap& phi);
ConditionJReport check_condition_J_components(const FilteredPresentation& pres, const PhiMap& phi);

/// J^n = sum_{i+N+j<=n} V^i P V^j for n = 0..D (J^n = 0 below N).
std::vector<FilteredSubspace> compute_J(const FilteredPresentation& pres, std::size_t D);

struct OracleReport {
  std::size_t bound = 0;
  std::vector<std::pair<std::size_t, bool>> equalities;  // (n, J^n cap F^{n-1} = J^{n-1}), N <= n <= D
  std::vector<std::size_t> J_dims;                      // n = 0..D
  /// dim F^n - dim J^n - (dim F^{n-1} - dim J^{n-1}), n = 0..D-1; equals dim gr(U)_n only while
  /// I(P) cap F^n = J^n, which truncated data cannot prove.
  std::vector<std::size_t> candidate_gr_dim;
  std::vector<std::size_t> A_dims;  // n = 0..D-1
  bool all_hold() const;
  std::optional<std::size_t> first_failure() const;
  bool gr_matches_A() const { return candidate_gr_dim == A_dims; }
  friend bool operator==(const OracleReport&, const OracleReport&) = default;
};

OracleReport oracle_pbw(const FilteredPresentation& pres, std::size_t D);

struct PBWReport {
  bool condition_I = false;
  std::optional<ConditionJReport> condition_J;  // absent when (I) fails
  std::optional<Tor3Verdict> tor3;
  bool tor3_unconditional = false;  // antisymmetrizer homogenization: Koszul in all degrees
  std::string theorem34_verdict;    // "pbw_certified_up_to_D" or "failed(reason)"
  OracleReport oracle;
  bool certified() const { return theorem34_verdict.rfind("pbw_certified", 0) == 0; }
  friend bool operator==(const PBWReport&, const PBWReport&) = default;
};

/// Conditions (I), (J) and the Tor_3 equalities up to D, plus the oracle up to D. Needs D >= 2N.
PBWReport pbw_verdict(const FilteredPresentation& pres, std::size_t D);

/// Structure constants [x_i, x_j] = sum coeff x_k (0-based i, j, k).
struct StructureConstant {
  int i = 0, j = 0, k = 0;
  Scalar coeff;
};
/// P spanned by x_i x_j - x_j x_i - f(x_i, x_j), i < j.
FilteredPresentation build_lie(std::size_t dimV, const std::vector<StructureConstant>& f, int conductor = 1);
/// P spanned by d^2u - alpha dud - beta ud^2 - gamma d and du^2 - alpha udu - beta u^2d - gamma u (d = x_1, u = x_2).
FilteredPresentation build_down_up(const Scalar& alpha, const Scalar& beta, const Scalar& gamma, int conductor = 1);

/// phi_0 == 0. Equivalent to k being a U-module through U -> T(V)/F^{>0} with V acting by zero.
bool check_remark_310(const FilteredPresentation& pres);

}  // namespace koszul
