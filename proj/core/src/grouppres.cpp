#include "koszul/grouppres.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace koszul {

WedgeBasis::WedgeBasis(std::size_t n, std::size_t p) : n_(n), p_(p) {
  if (p > n) return;
  std::vector<int> t(p);
  std::iota(t.begin(), t.end(), 0);
  const int N = static_cast<int>(n);
  while (true) {
    index_.emplace(t, tuples_.size());
    tuples_.push_back(t);
    // next increasing tuple
    int k = static_cast<int>(p) - 1;
    while (k >= 0 && t[k] == N - static_cast<int>(p) + k) --k;
    if (k < 0) break;
    ++t[k];
    for (std::size_t m = k + 1; m < p; ++m) t[m] = t[m - 1] + 1;
  }
}

std::size_t WedgeBasis::index(const std::vector<int>& t) const {
  auto it = index_.find(t);
  if (it == index_.end()) throw std::out_of_range("not an increasing tuple of the basis");
  return it->second;
}

MatrixS wedge_power(const MatrixS& a, std::size_t p) {
  WedgeBasis rows(a.rows(), p), cols(a.cols(), p);
  MatrixS out(rows.size(), cols.size());
  for (std::size_t J = 0; J < rows.size(); ++J)
    for (std::size_t I = 0; I < cols.size(); ++I) {
      MatrixS minor(p, p);
      for (std::size_t r = 0; r < p; ++r)
        for (std::size_t c = 0; c < p; ++c) minor(r, c) = a(rows.tuple(J)[r], cols.tuple(I)[c]);
      out(J, I) = determinant(std::move(minor));
    }
  return out;
}

PsiMap::PsiMap(std::size_t dim, std::size_t p_, std::size_t group_order)
    : dimV(dim), p(p_), values(group_order, std::vector<Scalar>(WedgeBasis(dim, p_).size())) {}

bool PsiMap::is_zero() const {
  for (const auto& v : values)
    for (const auto& x : v)
      if (!x.is_zero()) return false;
  return true;
}

namespace {

void check_shape(const GroupData& group, const PsiMap& psi) {
  if (psi.p < 2 || psi.p > group.dimV) throw std::invalid_argument("p must satisfy 2 <= p <= dim V");
  if (psi.dimV != group.dimV || psi.group_order() != group.order())
    throw DimensionError("psi does not match the group");
}

MatrixS sign_shift(const MatrixS& rho, std::size_t p) {
  // Id - (-1)^p rho
  const std::size_t n = rho.rows();
  MatrixS t = MatrixS::identity(n);
  const Scalar s = p % 2 == 0 ? Scalar(1) : Scalar(-1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t(i, j) -= s * rho(i, j);
  return t;
}

std::size_t count_below(const std::vector<int>& t, std::size_t a) {
  return static_cast<std::size_t>(std::count_if(t.begin(), t.end(), [&](int x) { return x < static_cast<int>(a); }));
}

int inversion_sign(const std::vector<int>& perm) {
  int s = 1;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) s = -s;
  return s;
}

}  // namespace

GDecomposition decompose(const GroupData& group, std::size_t p) {
  if (p < 2 || p > group.dimV) throw std::invalid_argument("p must satisfy 2 <= p <= dim V");
  GDecomposition d;
  d.p = p;
  d.odd_p = p % 2 == 1;
  const std::size_t n = group.dimV;
  for (int g = 0; g < static_cast<int>(group.order()); ++g) {
    MatrixS T = sign_shift(group.elements[g], p);
    ElementSplitting s;
    s.g = g;
    s.M = image(T);
    s.L = kernel(T);
    s.a = s.M.dim();
    if (s.M.dim() + s.L.dim() != n) throw std::logic_error("M_g + L_g does not split V");
    s.adapted = MatrixS(n, n);
    std::size_t c = 0;
    for (const auto* sp : {&s.M, &s.L})
      for (const auto& row : sp->rows()) {
        for (const auto& [i, x] : row.entries()) s.adapted(i, c) = x;
        ++c;
      }
    d.per_g.push_back(std::move(s));
  }
  return d;
}

SparseVector alternator(const TensorContext& ctx, const std::vector<int>& letters) {
  const std::size_t k = letters.size();
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<SparseVector::Entry> e;
  std::vector<int> w(k);
  do {
    for (std::size_t i = 0; i < k; ++i) w[i] = letters[perm[i]];
    e.emplace_back(ctx.index(ctx.word_index(w), 0), Scalar(inversion_sign(perm)));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return SparseVector(std::move(e));
}

FilteredPresentation build_H_psi(ContextPtr ctx, const PsiMap& psi) {
  check_shape(ctx->group(), psi);
  const std::size_t p = psi.p;
  WedgeBasis basis(psi.dimV, p);
  std::vector<SparseVector> gens;
  for (std::size_t t = 0; t < basis.size(); ++t) {
    SparseVector top = ctx->to_filtered(alternator(*ctx, basis.tuple(t)), p, p);
    SparseVector low;
    for (int g = 0; g < static_cast<int>(psi.group_order()); ++g)
      if (!psi.at(g, t).is_zero()) low.push_back(ctx->index(0, g), psi.at(g, t));
    gens.push_back(top - ctx->to_filtered(low, 0, p));
  }
  return FilteredPresentation::from_generators(std::move(ctx), p, gens, "h_psi");
}

bool check_equivariance(const GroupData& group, const PsiMap& psi) {
  check_shape(group, psi);
  const std::size_t B = WedgeBasis(psi.dimV, psi.p).size();
  for (int g = 0; g < static_cast<int>(group.order()); ++g) {
    MatrixS W = wedge_power(group.elements[g], psi.p);
    for (int h = 0; h < static_cast<int>(group.order()); ++h) {
      const int c = group.conjugate(h, g);
      for (std::size_t I = 0; I < B; ++I) {
        Scalar lhs;
        for (std::size_t J = 0; J < B; ++J)
          if (!W(J, I).is_zero()) lhs += W(J, I) * psi.at(h, J);
        if (lhs != psi.at(c, I)) return false;
      }
    }
  }
  return true;
}

bool check_identity_41(const GroupData& group, const PsiMap& psi) {
  check_shape(group, psi);
  const std::size_t n = psi.dimV, p = psi.p;
  WedgeBasis small(n, p), big(n, p + 1);
  for (int g = 0; g < static_cast<int>(group.order()); ++g) {
    MatrixS T = sign_shift(group.elements[g], p);
    for (const auto& K : big.tuples()) {
      std::vector<Scalar> v(n);
      for (std::size_t i = 0; i <= p; ++i) {
        std::vector<int> rest;
        for (std::size_t k = 0; k <= p; ++k)
          if (k != i) rest.push_back(K[k]);
        Scalar c = psi.at(g, small.index(rest));
        if (c.is_zero()) continue;
        if (i % 2 == 0) c = -c;  // (-1)^i with i counted from 1
        for (std::size_t r = 0; r < n; ++r) v[r] += c * T(r, K[i]);
      }
      for (const auto& x : v)
        if (!x.is_zero()) return false;
    }
  }
  return true;
}

std::vector<Scalar> adapted_values(const ElementSplitting& s, std::size_t p, const std::vector<Scalar>& psi_g) {
  MatrixS W = wedge_power(s.adapted, p);
  std::vector<Scalar> out(W.cols());
  for (std::size_t J = 0; J < W.cols(); ++J)
    for (std::size_t I = 0; I < W.rows(); ++I)
      if (!W(I, J).is_zero() && !psi_g[I].is_zero()) out[J] += W(I, J) * psi_g[I];
  return out;
}

Theorem44Report theorem_44_verdict(const GroupData& group, const PsiMap& psi) {
  Theorem44Report rep;
  rep.equivariant = check_equivariance(group, psi);
  rep.odd_p = psi.p % 2 == 1;
  rep.components_ok = true;
  GDecomposition dec = decompose(group, psi.p);
  WedgeBasis basis(psi.dimV, psi.p);
  for (const auto& s : dec.per_g) {
    std::vector<Scalar> vals = adapted_values(s, psi.p, psi.values[s.g]);
    for (std::size_t i = 0; i <= psi.p; ++i) {
      ComponentRow row{s.g, s.a, i, i == s.a, true};
      for (std::size_t J = 0; J < basis.size(); ++J)
        if (count_below(basis.tuple(J), s.a) == i && !vals[J].is_zero()) row.vanishes = false;
      if (!row.allowed && !row.vanishes) rep.components_ok = false;
      rep.table.push_back(row);
    }
  }
  return rep;
}

bool is_invariant_form(const GroupData& group, std::size_t p, const std::vector<Scalar>& phi) {
  for (int g = 0; g < static_cast<int>(group.order()); ++g) {
    MatrixS W = wedge_power(group.elements[g], p);
    for (std::size_t I = 0; I < phi.size(); ++I) {
      Scalar v;
      for (std::size_t J = 0; J < phi.size(); ++J)
        if (!W(J, I).is_zero()) v += W(J, I) * phi[J];
      if (v != phi[I]) return false;
    }
  }
  return true;
}

PsiMap build_psi_corollary45(const GroupData& group, std::size_t p, const std::vector<Scalar>& phi,
                             const std::vector<Scalar>& m) {
  WedgeBasis basis(group.dimV, p);
  if (phi.size() != basis.size()) throw DimensionError("phi must be given on the wedge basis");
  if (m.size() != group.order()) throw DimensionError("m must have one value per group element");
  if (!is_invariant_form(group, p, phi)) throw NotInvariant("phi is not invariant under the group");
  for (int g = 0; g < static_cast<int>(group.order()); ++g)
    for (int h = 0; h < static_cast<int>(group.order()); ++h)
      if (m[g] != m[group.conjugate(g, h)]) throw std::invalid_argument("m is not constant on conjugacy classes");
  PsiMap psi(group.dimV, p, group.order());
  GDecomposition dec = decompose(group, p);
  for (const auto& s : dec.per_g) {
    if (s.a > p || m[s.g].is_zero()) continue;
    std::vector<Scalar> b = adapted_values(s, p, phi);
    for (std::size_t J = 0; J < basis.size(); ++J)
      if (count_below(basis.tuple(J), s.a) != s.a) b[J] = Scalar(0);
    // back to the standard wedge basis
    MatrixS Winv = wedge_power(inverse(s.adapted), p);
    for (std::size_t I = 0; I < basis.size(); ++I) {
      Scalar v;
      for (std::size_t J = 0; J < basis.size(); ++J)
        if (!b[J].is_zero() && !Winv(J, I).is_zero()) v += Winv(J, I) * b[J];
      psi.at(s.g, I) = m[s.g] * v;
    }
  }
  return psi;
}

PsiMap build_symplectic_reflection(const GroupData& group, const MatrixS& omega, const std::vector<Scalar>& m) {
  const std::size_t n = group.dimV;
  if (omega.rows() != n || omega.cols() != n) throw DimensionError("omega must be dim V x dim V");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (omega(i, j) != -omega(j, i)) throw std::invalid_argument("omega is not alternating");
  if (determinant(omega).is_zero()) throw std::invalid_argument("omega is degenerate");
  WedgeBasis basis(n, 2);
  std::vector<Scalar> phi;
  for (const auto& t : basis.tuples()) phi.push_back(omega(t[0], t[1]));
  return build_psi_corollary45(group, 2, phi, m);
}

std::vector<Scalar> class_function(const GroupData& group, const std::vector<Scalar>& class_values) {
  if (class_values.size() != group.conj_classes.size())
    throw DimensionError("need one value per conjugacy class");
  std::vector<Scalar> m(group.order());
  for (std::size_t g = 0; g < group.order(); ++g) m[g] = class_values[group.class_of[g]];
  return m;
}

MatrixS koszul_differential(std::size_t dimE, std::size_t p) {
  if (p > dimE) throw std::invalid_argument("p must satisfy 0 <= p <= dim E");
  WedgeBasis dom(dimE, p), cod(dimE, p + 1);
  MatrixS d(cod.size() * dimE, dom.size());
  for (std::size_t K = 0; K < cod.size(); ++K) {
    const auto& k = cod.tuple(K);
    for (std::size_t i = 0; i <= p; ++i) {
      std::vector<int> rest;
      for (std::size_t j = 0; j <= p; ++j)
        if (j != i) rest.push_back(k[j]);
      d(K * dimE + k[i], dom.index(rest)) = i % 2 == 0 ? Scalar(-1) : Scalar(1);
    }
  }
  return d;
}

std::pair<MatrixS, MatrixS> leibniz_sides(std::size_t dimM, std::size_t dimL, std::size_t r, std::size_t s) {
  if (r > dimM || s > dimL) throw std::invalid_argument("component degrees exceed dimensions");
  const std::size_t n = dimM + dimL, p = r + s;
  MatrixS dV = koszul_differential(n, p);
  WedgeBasis Vp(n, p), Vq(n, p + 1), Mr(dimM, r), Mq(dimM, r + 1), Ls(dimL, s), Lq(dimL, s + 1);
  const int off = static_cast<int>(dimM);
  auto join = [&](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> t = a;
    for (int x : b) t.push_back(x + off);
    return t;
  };
  MatrixS dM = koszul_differential(dimM, r), dL = koszul_differential(dimL, s);
  MatrixS lhs(dV.rows(), Mr.size() * Ls.size()), rhs(dV.rows(), Mr.size() * Ls.size());
  const Scalar sign = r % 2 == 0 ? Scalar(1) : Scalar(-1);
  for (std::size_t I = 0; I < Mr.size(); ++I)
    for (std::size_t J = 0; J < Ls.size(); ++J) {
      const std::size_t col = I * Ls.size() + J;
      const std::size_t src = Vp.index(join(Mr.tuple(I), Ls.tuple(J)));
      for (std::size_t row = 0; row < dV.rows(); ++row) lhs(row, col) = dV(row, src);
      for (std::size_t K = 0; K < Mq.size(); ++K)
        for (std::size_t j = 0; j < dimM; ++j) {
          const Scalar& c = dM(K * dimM + j, I);
          if (!c.is_zero()) rhs(Vq.index(join(Mq.tuple(K), Ls.tuple(J))) * n + j, col) += c;
        }
      for (std::size_t K = 0; K < Lq.size(); ++K)
        for (std::size_t j = 0; j < dimL; ++j) {
          const Scalar& c = dL(K * dimL + j, J);
          if (!c.is_zero()) rhs(Vq.index(join(Mr.tuple(I), Lq.tuple(K))) * n + dimM + j, col) += sign * c;
        }
    }
  return {lhs, rhs};
}

}  // namespace koszul
