#pragma once

// Finite groups acting on V and the smash tensor algebra T(V)#G.
//
// Degree-n component coordinates: index = word * |G| + g, where word is the
// base-dimV number of the letters (slot 1 most significant). Filtered spaces
// F^n = sum_{i<=n} V^{(x)i} # G are laid out with the top degree first, so
// F^{n-1} is the coordinate tail of F^n and an RREF pivot is a leading term.

#include "koszul/linalg.hpp"

#include <map>
#include <memory>
#include <span>
#include <vector>

namespace koszul {

class GroupError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ContextMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GroupData {
  std::size_t dimV = 0;
  std::vector<MatrixS> elements;  // rho(g); index 0 is the identity
  std::vector<std::vector<int>> mult;
  std::vector<int> inverses;
  std::vector<std::vector<int>> conj_classes;
  std::vector<int> class_of;
  std::vector<int> generators;  // element indices of the generating set

  std::size_t order() const { return elements.size(); }
  int multiply(int g, int h) const { return mult[g][h]; }
  int inverse(int g) const { return inverses[g]; }
  /// g^{-1} h g
  int conjugate(int h, int g) const { return mult[mult[inverses[g]][h]][g]; }
  /// Associativity, identity, inverses, homomorphism and class partition.
  bool validate() const;
};

GroupData trivial_group(std::size_t dimV);
/// Enumerates the group generated by gens under right multiplication, in BFS order.
GroupData group_from_generators(std::size_t dimV, const std::vector<MatrixS>& gens, std::size_t order_cap = 1024);

/// A term (coeff, word, g) of an element of T(V)#G; letters are 0-based.
struct Term {
  Scalar coeff;
  std::vector<int> word;
  int g = 0;
  friend bool operator==(const Term&, const Term&) = default;
};

class TensorContext {
 public:
  TensorContext(int conductor, GroupData group);

  int conductor() const { return conductor_; }
  std::size_t dimV() const { return group_.dimV; }
  const GroupData& group() const { return group_; }
  std::size_t group_order() const { return group_.order(); }

  /// dimV^n
  std::size_t words(std::size_t n) const;
  std::size_t component_dim(std::size_t n) const { return words(n) * group_order(); }
  /// dim F^n
  std::size_t filtered_dim(std::size_t n) const;
  /// Offset of the degree-deg block inside F^top.
  std::size_t block_offset(std::size_t top, std::size_t deg) const { return filtered_dim(top) - filtered_dim(deg); }

  std::size_t index(std::size_t word, int g) const { return word * group_order() + static_cast<std::size_t>(g); }
  std::size_t word_index(std::span<const int> letters) const;
  std::vector<int> letters(std::size_t word, std::size_t n) const;

  /// rho(g)^{(x)n} applied to a basis word, in word coordinates.
  SparseVector act_on_word(int g, std::size_t word, std::size_t n) const;
  /// g . x for x homogeneous of degree n.
  SparseVector left_act(int g, const SparseVector& x, std::size_t n) const;
  /// x . g
  SparseVector right_act(const SparseVector& x, int g) const;
  /// Product of homogeneous elements of degrees i and j.
  SparseVector multiply(const SparseVector& a, std::size_t i, const SparseVector& b, std::size_t j) const;

  // Filtered coordinates.
  SparseVector to_filtered(const SparseVector& x, std::size_t deg, std::size_t top) const;
  /// Degree-deg component of x in F^top, as a homogeneous vector.
  SparseVector block(const SparseVector& x, std::size_t top, std::size_t deg) const;
  /// F^from inside F^to.
  SparseVector lift(const SparseVector& x, std::size_t from, std::size_t to) const;
  /// Inverse of lift; x must lie in F^to.
  SparseVector lower(const SparseVector& x, std::size_t from, std::size_t to) const;
  SparseVector filtered_multiply(const SparseVector& a, std::size_t top_a, const SparseVector& b,
                                 std::size_t top_b) const;
  SparseVector filtered_left_act(int g, const SparseVector& x, std::size_t top) const;
  SparseVector filtered_right_act(const SparseVector& x, std::size_t top, int g) const;
  /// (u (x) 1) . x  for the basis word u of length a.
  SparseVector filtered_prefix(std::size_t u, std::size_t a, const SparseVector& x, std::size_t top) const;
  /// x . (w (x) 1)
  SparseVector filtered_suffix(const SparseVector& x, std::size_t top, std::size_t w, std::size_t a) const;

  SparseVector encode(std::span<const Term> terms, std::size_t degree) const;
  SparseVector encode_filtered(std::span<const Term> terms, std::size_t top) const;
  std::vector<Term> decode(const SparseVector& x, std::size_t degree) const;
  std::vector<Term> decode_filtered(const SparseVector& x, std::size_t top) const;

  friend bool operator==(const TensorContext& a, const TensorContext& b);

 private:
  int conductor_;
  GroupData group_;
  // columns of rho(g): cols_[g][j] = nonzero (i, rho(g)_{ij})
  std::vector<std::vector<std::vector<std::pair<int, Scalar>>>> cols_;
};

using ContextPtr = std::shared_ptr<const TensorContext>;
ContextPtr make_context(int conductor, GroupData group);
ContextPtr make_field_context(int conductor, std::size_t dimV);

/// Span of {g x h : x in gens, g, h in G} (degree-n coordinates).
Subspace bimodule_closure(const TensorContext& ctx, std::size_t degree, std::span<const SparseVector> gens);
/// Closure under the generator actions on both sides.
bool is_bimodule_closed(const TensorContext& ctx, std::size_t degree, const Subspace& s);

class Subbimodule {
 public:
  /// Verifies closure; throws std::invalid_argument when s is not a subbimodule.
  Subbimodule(ContextPtr ctx, std::size_t degree, Subspace s);
  /// For results closed by construction (sums, products, intersections of subbimodules).
  static Subbimodule trusted(ContextPtr ctx, std::size_t degree, Subspace s);
  static Subbimodule generated(ContextPtr ctx, std::size_t degree, std::span<const SparseVector> gens);
  static Subbimodule zero(ContextPtr ctx, std::size_t degree);
  static Subbimodule full(ContextPtr ctx, std::size_t degree);

  const ContextPtr& context() const { return ctx_; }
  const TensorContext& ctx() const { return *ctx_; }
  std::size_t degree() const { return degree_; }
  const Subspace& space() const { return space_; }
  std::size_t dim() const { return space_.dim(); }
  bool is_closed() const { return is_bimodule_closed(*ctx_, degree_, space_); }
  bool contains(const Subbimodule& o) const { return space_.contains(o.space_); }

  friend bool operator==(const Subbimodule& a, const Subbimodule& b) {
    return a.degree_ == b.degree_ && a.space_ == b.space_;
  }

 private:
  Subbimodule(ContextPtr ctx, std::size_t degree, Subspace s, bool);
  ContextPtr ctx_;
  std::size_t degree_ = 0;
  Subspace space_;
};

Subbimodule sum(const Subbimodule& a, const Subbimodule& b);
Subbimodule intersect(const Subbimodule& a, const Subbimodule& b);

/// EF
Subbimodule product_EF(const Subbimodule& E, const Subbimodule& F);
/// V^{(x)a} E, a coordinate shift.
Subbimodule left_power(std::size_t a, const Subbimodule& E);
/// E V^{(x)a}
Subbimodule right_power(const Subbimodule& E, std::size_t a);
/// V^i E V^j
Subbimodule sandwich(std::size_t i, const Subbimodule& E, std::size_t j);
/// I(R)_n = sum_{i+N+j=n} V^i R V^j; zero below N.
Subbimodule ideal_component(const Subbimodule& R, std::size_t n);
/// I(R)_0 .. I(R)_nmax, sharing the recursion I_n = V I_{n-1} + R V^{n-N}.
std::vector<Subbimodule> ideal_components(const Subbimodule& R, std::size_t nmax);
/// W_n = intersection of V^i R V^{n-N-i}, left fold over i = 0..n-N.
Subbimodule W(const Subbimodule& R, std::size_t n);

enum class Lemma22 { i, ii, iii };
/// (i) EF cap EF' = E(F cap F'); (ii) EF cap E'F = (E cap E')F; (iii) E'F cap EF' = E'F'.
bool check_lemma22(const Subbimodule& E, const Subbimodule& Ep, const Subbimodule& F, const Subbimodule& Fp,
                   Lemma22 which);

/// Subspace of F^top, closed under the simultaneous block actions.
class FilteredSubspace {
 public:
  FilteredSubspace(ContextPtr ctx, std::size_t top, Subspace s);
  static FilteredSubspace trusted(ContextPtr ctx, std::size_t top, Subspace s);
  static FilteredSubspace generated(ContextPtr ctx, std::size_t top, std::span<const SparseVector> gens);

  const ContextPtr& context() const { return ctx_; }
  const TensorContext& ctx() const { return *ctx_; }
  std::size_t top_degree() const { return top_; }
  const Subspace& space() const { return space_; }
  std::size_t dim() const { return space_.dim(); }
  bool is_closed() const;
  /// S cap F^{top-1}, expressed in F^{top-1}.
  FilteredSubspace below() const;
  /// The same subspace inside F^to.
  FilteredSubspace lifted(std::size_t to) const;

  friend bool operator==(const FilteredSubspace& a, const FilteredSubspace& b) {
    return a.top_ == b.top_ && a.space_ == b.space_;
  }

 private:
  FilteredSubspace(ContextPtr ctx, std::size_t top, Subspace s, bool);
  ContextPtr ctx_;
  std::size_t top_ = 0;
  Subspace space_;
};

Subspace filtered_closure(const TensorContext& ctx, std::size_t top, std::span<const SparseVector> gens);

/// Rows with pivot >= offset, shifted down; s must lie in the tail.
Subspace drop_prefix(const Subspace& s, std::size_t offset, std::size_t new_ambient);

}  // namespace koszul
