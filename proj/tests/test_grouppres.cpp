#include "koszul/grouppres.hpp"

#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "support.hpp"

using namespace koszul;
using namespace koszul::testing;

namespace {

// permutation expansion
Scalar det_oracle(const MatrixS& m) {
  std::vector<int> perm(m.rows());
  std::iota(perm.begin(), perm.end(), 0);
  Scalar d;
  do {
    Scalar t(permutation_sign(perm));
    for (std::size_t i = 0; i < m.rows(); ++i) t *= m(i, perm[i]);
    d += t;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return d;
}

}  // namespace

TEST(Wedge, BasisAndPowers) {
  for (std::size_t n = 0; n <= 5; ++n)
    for (std::size_t p = 0; p <= n + 1; ++p) {
      WedgeBasis b(n, p);
      EXPECT_EQ(static_cast<long>(b.size()), binomial(n, p));
      for (std::size_t i = 0; i < b.size(); ++i) EXPECT_EQ(b.index(b.tuple(i)), i);
    }
  EXPECT_THROW(WedgeBasis(3, 2).index({1, 0}), std::out_of_range);
  std::mt19937 rng(11);
  for (int t = 0; t < 20; ++t) {
    MatrixS a = random_matrix(rng, 4, 4), b = random_matrix(rng, 4, 4);
    EXPECT_EQ(determinant(a), det_oracle(a));
    // Cauchy-Binet
    for (std::size_t p = 1; p <= 4; ++p) EXPECT_EQ(wedge_power(a * b, p), wedge_power(a, p) * wedge_power(b, p));
    EXPECT_EQ(wedge_power(a, 4)(0, 0), determinant(a));
    if (!determinant(a).is_zero()) EXPECT_EQ(a * inverse(a), MatrixS::identity(4));
  }
  EXPECT_THROW(inverse(int_matrix(2, {1, 2, 2, 4})), DimensionError);
}

TEST(Decompose, Examples) {
  auto triv = trivial_group(3);
  auto d = decompose(triv, 2);
  EXPECT_EQ(d.per_g[0].a, 0u);
  EXPECT_EQ(d.per_g[0].L.dim(), 3u);
  EXPECT_FALSE(d.odd_p);

  auto pm = plus_minus(2);
  auto dp = decompose(pm, 2);
  int neg = pm.elements[0](0, 0) == Scalar(-1) ? 0 : 1;
  EXPECT_EQ(dp.per_g[neg].a, 2u);
  EXPECT_EQ(dp.per_g[neg].L.dim(), 0u);

  GroupData swap = group_from_generators(3, {permutation_matrix(std::vector<int>{1, 0, 2})});
  auto ds = decompose(swap, 2);
  for (const auto& s : ds.per_g) {
    if (s.g == 0 && swap.elements[0] == MatrixS::identity(3)) continue;
    if (s.a == 0) continue;
    EXPECT_EQ(s.a, 1u);
    EXPECT_TRUE(s.M.contains(SparseVector(std::vector<SparseVector::Entry>{{0, Scalar(1)}, {1, Scalar(-1)}})));
    EXPECT_EQ(s.L.dim(), 2u);
  }
  // odd p flips the sign: identity has M = V
  auto d3 = decompose(trivial_group(3), 3);
  EXPECT_TRUE(d3.odd_p);
  EXPECT_EQ(d3.per_g[0].a, 3u);
  EXPECT_THROW(decompose(triv, 1), std::invalid_argument);
  EXPECT_THROW(decompose(triv, 4), std::invalid_argument);
}

TEST(HPsi, ZeroPsiDimensions) {
  struct Case {
    GroupData G;
    std::size_t p;
  };
  std::vector<Case> cases{{trivial_group(4), 3}, {s3(3), 2}, {plus_minus(2), 2}, {s3(4), 3}};
  for (const auto& c : cases) {
    auto ctx = make_context(1, c.G);
    PsiMap zero(c.G.dimV, c.p, c.G.order());
    auto pres = build_H_psi(ctx, zero);
    EXPECT_TRUE(check_condition_I(pres));
    const long order = static_cast<long>(c.G.order());
    EXPECT_EQ(static_cast<long>(project_R(pres).dim()), binomial(c.G.dimV, c.p) * order);
    HomogeneousAlgebra A = homogenization(pres);
    EXPECT_EQ(A.family(), "antisymmetrizer");
    // W_{p+1} = Lambda^{p+1} V (x) K
    EXPECT_EQ(static_cast<long>(A.Wn(c.p + 1).dim()), binomial(c.G.dimV, c.p + 1) * order);
    EXPECT_TRUE(build_phi(pres).is_zero());
    EXPECT_TRUE(theorem_44_verdict(c.G, zero).holds());
    EXPECT_TRUE(check_identity_41(c.G, zero));
  }
}

TEST(HPsi, SymplecticReflection) {
  auto G = plus_minus(2);
  auto ctx = make_context(1, G);
  for (long t : {0L, 1L}) {
    int e = G.elements[0] == MatrixS::identity(2) ? 0 : 1;
    std::vector<Scalar> m(2);
    m[e] = 1;
    m[1 - e] = t;
    PsiMap psi = build_symplectic_reflection(G, standard_omega(2), m);
    EXPECT_EQ(psi.at(e, 0), Scalar(1));
    EXPECT_EQ(psi.at(1 - e, 0), Scalar(t));
    EXPECT_TRUE(check_equivariance(G, psi));
    EXPECT_TRUE(check_identity_41(G, psi));
    auto v = theorem_44_verdict(G, psi);
    EXPECT_TRUE(v.holds());
    auto pres = build_H_psi(ctx, psi);
    PhiMap phi = build_phi(pres);
    EXPECT_TRUE(phi.is_phi0());
    EXPECT_EQ(check_remark_310(pres), psi.is_zero());
    EXPECT_FALSE(check_remark_310(pres));
    auto rep = pbw_verdict(pres, 7);
    EXPECT_TRUE(rep.certified()) << rep.theorem34_verdict;
    EXPECT_TRUE(rep.tor3_unconditional);
    EXPECT_TRUE(rep.oracle.all_hold());
    for (std::size_t n = 0; n <= 6; ++n) EXPECT_EQ(rep.oracle.candidate_gr_dim[n], 2 * (n + 1));
  }
}

TEST(HPsi, SymplecticRejectsBadOmega) {
  auto G = plus_minus(2);
  std::vector<Scalar> m{Scalar(1), Scalar(1)};
  EXPECT_THROW(build_symplectic_reflection(G, int_matrix(2, {0, 1, 1, 0}), m), std::invalid_argument);
  EXPECT_THROW(build_symplectic_reflection(plus_minus(4), MatrixS(4, 4), m), std::invalid_argument);
}

TEST(HPsi, NonEquivariantFailsConditionI) {
  auto G = s3(3);
  // a transposition, which has two other conjugates
  int tr = -1;
  for (int g = 0; g < 6; ++g)
    if (G.conj_classes[G.class_of[g]].size() == 3) tr = g;
  ASSERT_GE(tr, 0);
  PsiMap psi(3, 2, 6);
  psi.at(tr, 0) = 3;
  psi.at(tr, 2) = -1;
  EXPECT_FALSE(check_equivariance(G, psi));
  EXPECT_FALSE(theorem_44_verdict(G, psi).holds());
  EXPECT_FALSE(check_condition_I(build_H_psi(make_context(1, G), psi)));
}

TEST(HPsi, GlobalPhiFailsOffComponent) {
  // psi_g = omega everywhere, with M_g a proper nonzero subspace
  auto G = half_flip4();
  MatrixS w = standard_omega(4);
  WedgeBasis b(4, 2);
  PsiMap psi(4, 2, 2);
  for (int g = 0; g < 2; ++g)
    for (std::size_t t = 0; t < b.size(); ++t) psi.at(g, t) = w(b.tuple(t)[0], b.tuple(t)[1]);
  EXPECT_TRUE(check_equivariance(G, psi));
  EXPECT_FALSE(check_identity_41(G, psi));
  auto v = theorem_44_verdict(G, psi);
  EXPECT_FALSE(v.holds());
  bool off = false;
  for (const auto& r : v.table)
    if (!r.allowed && !r.vanishes) off = true;
  EXPECT_TRUE(off);
  // the construction keeps only the allowed component
  PsiMap good = build_symplectic_reflection(G, w, {Scalar(1), Scalar(1)});
  EXPECT_NE(good, psi);
  EXPECT_TRUE(theorem_44_verdict(G, good).holds());
  auto pres = build_H_psi(make_context(1, G), good);
  auto rep = pbw_verdict(pres, 4);
  EXPECT_TRUE(rep.certified()) << rep.theorem34_verdict;
  auto bad = check_condition_J(build_H_psi(make_context(1, G), psi));
  EXPECT_FALSE(bad.holds());
}

TEST(HPsi, InvariantFormBuilderErrors) {
  auto G = s3(4);
  WedgeBasis b(4, 2);
  std::vector<Scalar> phi(b.size());
  phi[b.index({0, 1})] = 1;  // not invariant under the 3-cycle
  std::vector<Scalar> ones(G.order(), Scalar(1));
  EXPECT_THROW(build_psi_corollary45(G, 2, phi, ones), NotInvariant);
  std::vector<Scalar> inv = reynolds_form(G, 2, phi);
  EXPECT_TRUE(is_invariant_form(G, 2, inv));
  std::vector<Scalar> m(G.order(), Scalar(1));
  for (int g = 0; g < 6; ++g)
    if (G.conj_classes[G.class_of[g]].size() == 3) {
      m[g] = 2;
      break;
    }
  EXPECT_THROW(build_psi_corollary45(G, 2, inv, m), std::invalid_argument);
  // m = 0 gives psi = 0
  EXPECT_TRUE(build_psi_corollary45(G, 2, inv, std::vector<Scalar>(6)).is_zero());
  // trivial group: psi = phi e
  auto T = trivial_group(3);
  std::vector<Scalar> f{Scalar(1), Scalar(-2), Scalar(5)};
  PsiMap psi = build_psi_corollary45(T, 2, f, {Scalar(1)});
  EXPECT_EQ(psi.values[0], f);
}

TEST(HPsi, ClassFunction) {
  auto G = s3(3);
  std::vector<Scalar> cv;
  for (std::size_t c = 0; c < G.conj_classes.size(); ++c) cv.push_back(Scalar(static_cast<long>(c + 1)));
  auto m = class_function(G, cv);
  for (std::size_t g = 0; g < G.order(); ++g) EXPECT_EQ(m[g], cv[G.class_of[g]]);
  EXPECT_THROW(class_function(G, {Scalar(1)}), DimensionError);
}

TEST(KoszulDifferential, InjectivitySweep) {
  for (std::size_t E = 1; E <= 5; ++E)
    for (std::size_t p = 0; p <= E; ++p) {
      MatrixS d = koszul_differential(E, p);
      EXPECT_EQ(static_cast<long>(d.cols()), binomial(E, p));
      EXPECT_EQ(static_cast<long>(d.rows()), binomial(E, p + 1) * static_cast<long>(E));
      const bool injective = rank(d) == d.cols();
      EXPECT_EQ(injective, p < E) << E << " " << p;
      if (p == E) EXPECT_EQ(kernel(d).dim(), 1u);
    }
  EXPECT_THROW(koszul_differential(2, 3), std::invalid_argument);
}

TEST(KoszulDifferential, MatchesDefinition) {
  // (d alpha)(e_K) = sum_i (-1)^i alpha(e_{K minus k_i}) e_{k_i}, i from 1
  MatrixS d = koszul_differential(3, 1);
  // K = (0,1): removing slot 2 gives +alpha(e_0) e_1, removing slot 1 gives -alpha(e_1) e_0
  WedgeBasis two(3, 2);
  EXPECT_EQ(d(two.index({0, 1}) * 3 + 1, 0), Scalar(1));
  EXPECT_EQ(d(two.index({0, 1}) * 3 + 0, 1), Scalar(-1));
  EXPECT_EQ(d(two.index({1, 2}) * 3 + 1, 0), Scalar(0));
}

TEST(KoszulDifferential, Leibniz) {
  for (std::size_t r = 0; r <= 2; ++r)
    for (std::size_t s = 0; s <= 2; ++s) {
      auto [lhs, rhs] = leibniz_sides(2, 2, r, s);
      EXPECT_EQ(lhs, rhs) << r << " " << s;
    }
  auto [l, r] = leibniz_sides(1, 3, 1, 2);
  EXPECT_EQ(l, r);
}

TEST(PsiCriterion, RandomLaws) {
  std::mt19937 rng(404);
  struct Setup {
    GroupData G;
    std::size_t p;
  };
  std::vector<Setup> setups{{trivial_group(3), 2}, {plus_minus(2), 2}, {half_flip4(), 2}, {s3(4), 2}, {s3(4), 3}};
  std::vector<ContextPtr> ctxs;
  for (const auto& s : setups) ctxs.push_back(make_context(1, s.G));
  int agree41 = 0, agreeIJ = 0, positives = 0;
  std::uniform_int_distribution<int> kind(0, 3), val(-2, 2);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t si = static_cast<std::size_t>(trial) % setups.size();
    const auto& G = setups[si].G;
    const std::size_t p = setups[si].p;
    PsiMap psi;
    switch (kind(rng)) {
      case 0: {
        // the invariant-form construction
        std::vector<Scalar> phi(WedgeBasis(G.dimV, p).size());
        for (auto& x : phi) x = val(rng);
        std::vector<Scalar> cv;
        for (std::size_t c = 0; c < G.conj_classes.size(); ++c) cv.push_back(Scalar(val(rng)));
        psi = build_psi_corollary45(G, p, reynolds_form(G, p, phi), class_function(G, cv));
        break;
      }
      case 1:
        psi = reynolds_psi(G, random_psi(rng, G, p, 50));
        break;
      case 2:
        psi = random_psi(rng, G, p, 30);
        break;
      default: {
        std::vector<Scalar> phi(WedgeBasis(G.dimV, p).size());
        for (auto& x : phi) x = val(rng);
        psi = build_psi_corollary45(G, p, reynolds_form(G, p, phi), std::vector<Scalar>(G.order(), Scalar(1)));
        PsiMap noise = random_psi(rng, G, p, 10);
        for (std::size_t g = 0; g < G.order(); ++g)
          for (std::size_t t = 0; t < psi.values[g].size(); ++t) psi.values[g][t] += noise.values[g][t];
        psi = reynolds_psi(G, psi);
      }
    }
    const bool verdict = theorem_44_verdict(G, psi).holds();
    const bool lemmas = check_equivariance(G, psi) && check_identity_41(G, psi);
    EXPECT_EQ(verdict, lemmas) << "trial " << trial;
    agree41 += verdict == lemmas;
    auto pres = build_H_psi(ctxs[si], psi);
    bool IJ = check_condition_I(pres);
    if (IJ) IJ = check_condition_J(pres).holds();
    EXPECT_EQ(verdict, IJ) << "trial " << trial;
    agreeIJ += verdict == IJ;
    positives += verdict;
  }
  EXPECT_EQ(agree41, 100);
  EXPECT_EQ(agreeIJ, 100);
  EXPECT_GT(positives, 10);
  EXPECT_LT(positives, 90);
}
