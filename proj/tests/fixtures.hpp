#pragma once

// Shared fixtures: the named example algebras and the brute-force searches.

#include <array>
#include <random>

#include "koszul/komplex.hpp"
#include "search.hpp"
#include "support.hpp"

namespace koszul::testing {

inline std::vector<StructureConstant> sl2() {
  // e = 0, f = 1, h = 2
  return {{0, 1, 2, Scalar(1)}, {2, 0, 0, Scalar(2)}, {2, 1, 1, Scalar(-2)}};
}

inline std::vector<StructureConstant> heisenberg() { return {{0, 1, 2, Scalar(1)}}; }

// bracket on Q^3 from 9 integers: [x0,x1], [x0,x2], [x1,x2]
using Bracket = std::array<std::array<std::array<long, 3>, 3>, 3>;

inline Bracket bracket_from(const std::vector<long>& c) {
  Bracket b{};
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (int p = 0; p < 3; ++p)
    for (int k = 0; k < 3; ++k) {
      b[pairs[p][0]][pairs[p][1]][k] = c[3 * p + k];
      b[pairs[p][1]][pairs[p][0]][k] = -c[3 * p + k];
    }
  return b;
}

// [[a,b],c] for basis vectors
inline std::array<long, 3> double_bracket(const Bracket& b, int x, int y, int z) {
  std::array<long, 3> out{};
  for (int k = 0; k < 3; ++k)
    for (int m = 0; m < 3; ++m) out[m] += b[x][y][k] * b[k][z][m];
  return out;
}

inline bool jacobi_holds(const Bracket& b) {
  auto a = double_bracket(b, 0, 1, 2), c = double_bracket(b, 1, 2, 0), d = double_bracket(b, 2, 0, 1);
  for (int m = 0; m < 3; ++m)
    if (a[m] + c[m] + d[m] != 0) return false;
  return true;
}

inline std::vector<StructureConstant> constants_from(const std::vector<long>& c) {
  std::vector<StructureConstant> f;
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (int p = 0; p < 3; ++p)
    for (int k = 0; k < 3; ++k)
      if (c[3 * p + k] != 0) f.push_back({pairs[p][0], pairs[p][1], k, Scalar(c[3 * p + k])});
  return f;
}

// first ternary vector whose bracket violates Jacobi
inline std::pair<std::size_t, std::vector<long>> find_non_jacobi() {
  for (std::size_t t = 1; t < ternary_count(9); ++t) {
    auto c = ternary_digits(t, 9);
    if (!jacobi_holds(bracket_from(c))) return {t, c};
  }
  return {0, {}};
}

inline std::size_t down_up_count(std::size_t n) {
  std::size_t c = 0;
  for (std::size_t j = 0; 2 * j <= n; ++j) c += n - 2 * j + 1;
  return c;
}

inline SparseVector down_up_r(const TensorContext& ctx, int a, long alpha, long beta) {
  // r1 (a = 0) or r2 (a = 1), homogeneous part
  const int d = 0, u = 1;
  if (a == 0) return term(ctx, {d, d, u}) + term(ctx, {d, u, d}, -alpha) + term(ctx, {u, d, d}, -beta);
  return term(ctx, {d, u, u}) + term(ctx, {u, d, u}, -alpha) + term(ctx, {u, u, d}, -beta);
}

inline GroupData plus_minus(std::size_t n) {
  MatrixS m = MatrixS::identity(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = -1;
  return group_from_generators(n, {m});
}

inline GroupData half_flip4() { return group_from_generators(4, {int_matrix(4, {-1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1})}); }

// S3 permuting the first three coordinates of Q^n
inline GroupData s3(std::size_t n) {
  MatrixS a = permutation_matrix(std::vector<int>{1, 0, 2}), b = permutation_matrix(std::vector<int>{1, 2, 0});
  MatrixS A = MatrixS::identity(n), B = MatrixS::identity(n);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) A(i, j) = a(i, j), B(i, j) = b(i, j);
  return group_from_generators(n, {A, B});
}

inline MatrixS standard_omega(std::size_t n) {
  MatrixS w(n, n);
  for (std::size_t i = 0; i + 1 < n; i += 2) w(i, i + 1) = 1, w(i + 1, i) = -1;
  return w;
}

inline MatrixS random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int range = 3) {
  std::uniform_int_distribution<int> v(-range, range);
  MatrixS m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = v(rng);
  return m;
}

inline std::vector<Scalar> reynolds_form(const GroupData& G, std::size_t p, const std::vector<Scalar>& phi) {
  std::vector<Scalar> out(phi.size());
  for (int g = 0; g < static_cast<int>(G.order()); ++g) {
    MatrixS W = wedge_power(G.elements[g], p);
    for (std::size_t I = 0; I < phi.size(); ++I)
      for (std::size_t J = 0; J < phi.size(); ++J) out[I] += W(J, I) * phi[J];
  }
  for (auto& x : out) x /= Scalar(static_cast<long>(G.order()));
  return out;
}

// average of (g.psi)_h(w) = psi_{g h g^-1}(rho(g) w)
inline PsiMap reynolds_psi(const GroupData& G, const PsiMap& psi) {
  PsiMap out(psi.dimV, psi.p, G.order());
  const std::size_t B = psi.values[0].size();
  for (int g = 0; g < static_cast<int>(G.order()); ++g) {
    MatrixS W = wedge_power(G.elements[g], psi.p);
    for (int h = 0; h < static_cast<int>(G.order()); ++h) {
      const int c = G.multiply(G.multiply(g, h), G.inverse(g));
      for (std::size_t I = 0; I < B; ++I)
        for (std::size_t J = 0; J < B; ++J) out.at(h, I) += W(J, I) * psi.at(c, J);
    }
  }
  for (auto& v : out.values)
    for (auto& x : v) x /= Scalar(static_cast<long>(G.order()));
  return out;
}

inline PsiMap random_psi(std::mt19937& rng, const GroupData& G, std::size_t p, int density) {
  PsiMap psi(G.dimV, p, G.order());
  std::uniform_int_distribution<int> keep(0, 99), v(-2, 2);
  for (auto& row : psi.values)
    for (auto& x : row)
      if (keep(rng) < density) x = v(rng);
  return psi;
}

// Z/2 acting by -1 on Q^2, psi_e = omega, psi_{-1} = t omega
inline FilteredPresentation symplectic(long t) {
  auto G = plus_minus(2);
  const int e = G.elements[0] == MatrixS::identity(2) ? 0 : 1;
  std::vector<Scalar> m(2);
  m[e] = 1;
  m[1 - e] = t;
  PsiMap psi = build_symplectic_reflection(G, standard_omega(2), m);
  return build_H_psi(make_context(1, G), psi);
}

inline FilteredPresentation symplectic_zero() {
  auto G = plus_minus(2);
  return build_H_psi(make_context(1, G), PsiMap(2, 2, 2));
}

// Gamma trivial, p = 3, psi(e_0 ^ e_1 ^ e_2) = c over Q(zeta_3)
inline FilteredPresentation cubic(std::size_t dimV, long c) {
  auto ctx = make_field_context(3, dimV);
  PsiMap psi(dimV, 3, 1);
  psi.at(0, 0) = c;
  return build_H_psi(ctx, psi);
}

inline Subbimodule random_sub(std::mt19937& rng, ContextPtr ctx, std::size_t deg, int count) {
  std::vector<SparseVector> g;
  for (int k = 0; k < count; ++k) g.push_back(random_vector(rng, ctx->component_dim(deg), 40, 1));
  return Subbimodule::generated(ctx, deg, g);
}

}  // namespace koszul::testing
