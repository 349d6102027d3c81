#include "koszul/komplex.hpp"

#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "support.hpp"

using namespace koszul;
using namespace koszul::testing;

namespace {

SparseVector group_class(const TruncatedU& U, int g) {
  return U.reduce(SparseVector::unit(U.ctx().index(0, g)), 0);
}

bool rows_equal(const SparseMatrix& a, const SparseMatrix& b) { return a.rows == b.rows; }

// dim of U (x)_K W_m (x)_K U in total degree <= t from the Hilbert series alone
std::size_t model_dim_oracle(const std::vector<std::size_t>& gr, std::size_t G, std::size_t w0, std::size_t m,
                             std::size_t t) {
  std::size_t s = 0;
  for (std::size_t a = 0; a + m <= t; ++a)
    for (std::size_t c = 0; a + m + c <= t; ++c) s += gr[a] / G * w0 * gr[c];
  return s;
}

}  // namespace

TEST(TruncatedU, SymplecticBasics) {
  auto pres = symplectic(1);
  TruncatedU U(pres, 6);
  for (std::size_t n = 0; n <= 6; ++n) EXPECT_EQ(U.dim_upto(n), static_cast<std::size_t>((n + 1) * (n + 2)));
  EXPECT_EQ(U.right_basis().size(), 28u);
  // filtered right basis: b-count per degree is dim gr / |G|
  std::vector<std::size_t> per(7);
  for (std::size_t b : U.right_basis()) ++per[U.degree(b)];
  for (std::size_t n = 0; n <= 6; ++n) EXPECT_EQ(per[n], n + 1);

  std::mt19937 rng(5);
  std::uniform_int_distribution<std::size_t> pick(0, U.dim() - 1);
  int checked = 0;
  while (checked < 150) {
    const std::size_t a = pick(rng), b = pick(rng), c = pick(rng);
    if (U.degree(a) + U.degree(b) + U.degree(c) > 6) continue;
    auto ea = SparseVector::unit(a), eb = SparseVector::unit(b), ec = SparseVector::unit(c);
    EXPECT_EQ(U.multiply(U.multiply(ea, eb), ec), U.multiply(ea, U.multiply(eb, ec)));
    ++checked;
  }
  // every class decomposes back over {e_b g}
  for (std::size_t i = 0; i < U.dim(); ++i) {
    SparseVector back;
    for (const auto& t : U.decompose_right(SparseVector::unit(i)))
      back.axpy(t.coeff, U.multiply(SparseVector::unit(U.right_basis()[t.b]), group_class(U, t.g)));
    EXPECT_EQ(back, SparseVector::unit(i));
  }
  EXPECT_THROW(U.multiply(SparseVector::unit(U.dim() - 1), U.letter(0)), DegreeOverflow);
}

TEST(TruncatedU, ReductionIgnoresRepresentative) {
  auto pres = symplectic(0);
  TruncatedU U(pres, 5);
  const auto J = compute_J(pres, 5).back().space();
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    SparseVector u = random_vector(rng, U.dim(), 30);
    SparseVector x = U.representative(u, 5);
    for (const auto& r : J.rows()) {
      if (rng() % 4 != 0) continue;
      x.axpy(Scalar(static_cast<long>(rng() % 5) - 2), r);
    }
    EXPECT_EQ(U.reduce(x, 5), u);
  }
  // the defining relation: xy - yx = 1 + t(-1) in U
  auto xy = U.multiply(U.letter(0), U.letter(1)), yx = U.multiply(U.letter(1), U.letter(0));
  EXPECT_EQ(xy - yx, group_class(U, 0));
}

TEST(BimoduleComplex, SymplecticSquareZero) {
  for (long t : {0L, 1L}) {
    TruncatedU U(symplectic(t), 6);
    BimoduleComplex cx(U);
    auto rep = check_dN_zero(cx, Scalar(-1));
    EXPECT_TRUE(rep.dN_zero);
    EXPECT_TRUE(rep.commute);
    EXPECT_TRUE(rep.factorization);
    EXPECT_TRUE(rep.phi_identity);
    EXPECT_TRUE(rep.lands_in_W);
    EXPECT_FALSE(rep.failing_level);
  }
}

TEST(BimoduleComplex, CubicBothRoots) {
  TruncatedU U(cubic(3, 1), 6);
  BimoduleComplex cx(U);
  const Scalar z = Scalar::zeta(3);
  for (const Scalar& q : {z, z * z}) {
    auto rep = check_dN_zero(cx, q);
    EXPECT_TRUE(rep.dN_zero) << rep.q;
    EXPECT_TRUE(rep.commute);
    EXPECT_TRUE(rep.factorization);
    EXPECT_TRUE(rep.phi_identity);
    EXPECT_TRUE(rep.lands_in_W);
  }
  EXPECT_THROW(check_dN_zero(cx, Scalar(1)), std::invalid_argument);
  EXPECT_THROW(check_dN_zero(cx, Scalar(-1)), std::invalid_argument);
}

TEST(BimoduleComplex, CorruptedPhiBreaksCube) {
  // psi on Lambda^3 of a 4-dimensional space violates the identity, so J fails
  auto pres = cubic(4, 1);
  EXPECT_FALSE(check_condition_J(pres).holds());
  TruncatedU U(pres, 4);
  BimoduleComplex cx(U);
  auto rep = check_dN_zero(cx, Scalar::zeta(3));
  EXPECT_FALSE(rep.dN_zero);
  ASSERT_TRUE(rep.failing_level);
  EXPECT_EQ(*rep.failing_level, 4u);
  EXPECT_TRUE(rep.factorization);
  EXPECT_TRUE(rep.phi_identity);
}

TEST(BimoduleComplex, ZeroPsiKillsLeftPower) {
  TruncatedU U(cubic(3, 0), 5);
  BimoduleComplex cx(U);
  for (std::size_t n = 3; n <= 5; ++n)
    for (const auto& v : cx.spanning(n, 5)) {
      SparseVector l = v, r = v;
      for (std::size_t k = n; k > n - 3; --k) l = cx.d_left(k, l), r = cx.d_right(k, r);
      EXPECT_TRUE(l.empty());
      EXPECT_TRUE(r.empty());
    }
}

TEST(BimoduleComplex, Rejections) {
  EXPECT_THROW(
      {
        TruncatedU U(build_down_up(Scalar(1), Scalar(1), Scalar(1)), 4);
        BimoduleComplex cx(U);
      },
      std::invalid_argument);
  EXPECT_THROW(
      {
        TruncatedU U(build_lie(3, {{0, 1, 2, Scalar(1)}}), 3);
        BimoduleComplex cx(U);
      },
      std::invalid_argument);
  TruncatedU U(symplectic(1), 1);
  BimoduleComplex cx(U);
  EXPECT_THROW(check_dN_zero(cx, Scalar(-1)), std::invalid_argument);
}

TEST(Contracted, SymplecticWindow) {
  for (long t : {0L, 1L}) {
    TruncatedU U(symplectic(t), 6);
    BimoduleComplex cx(U);
    auto rep = contracted_complex(cx);
    EXPECT_EQ(rep.window, 4u);
    EXPECT_TRUE(rep.composition_zero);
    EXPECT_TRUE(rep.window_exact);
    EXPECT_TRUE(rep.all_exact);
    std::vector<std::size_t> gr;
    for (std::size_t n = 0; n <= 6; ++n) gr.push_back(2 * (n + 1));
    for (const auto& s : rep.slices) {
      EXPECT_EQ(s.in_window, s.t <= 4);
      EXPECT_EQ(s.euler, 0);
      for (std::size_t i = 0; i < s.dims.size(); ++i)
        EXPECT_EQ(s.dims[i], model_dim_oracle(gr, 2, binomial(2, static_cast<long>(s.w_degrees[i])), s.w_degrees[i], s.t));
    }
  }
}

TEST(Contracted, CubicWindow) {
  TruncatedU U(cubic(3, 1), 6);
  BimoduleComplex cx(U);
  auto rep = contracted_complex(cx);
  EXPECT_EQ(rep.window, 3u);
  EXPECT_TRUE(rep.composition_zero);
  EXPECT_TRUE(rep.window_exact);
  EXPECT_TRUE(rep.all_exact);
  // Hilbert series 1 / (1 - 3t + t^3)
  const std::vector<std::size_t> gr{1, 3, 9, 26, 75, 216, 622};
  const std::vector<std::size_t> w0{1, 3, 0, 1};
  for (const auto& s : rep.slices) {
    EXPECT_EQ(s.euler, 0);
    for (std::size_t i = 0; i < s.dims.size(); ++i) {
      const std::size_t m = s.w_degrees[i];
      EXPECT_EQ(s.dims[i], model_dim_oracle(gr, 1, m < w0.size() ? w0[m] : 0, m, s.t));
    }
  }
}

TEST(Contracted, BasisChoiceDoesNotMatter) {
  auto pres = symplectic(1);
  TruncatedU U0(pres, 5), U1(pres, 5, 7), U2(pres, 5, 1234);
  EXPECT_NE(U0.right_basis(), U1.right_basis());
  BimoduleComplex c0(U0), c1(U1), c2(U2);
  auto r0 = contracted_complex(c0), r1 = contracted_complex(c1), r2 = contracted_complex(c2);
  for (std::size_t t = 0; t < r0.slices.size(); ++t) {
    EXPECT_EQ(r0.slices[t].dims, r1.slices[t].dims);
    EXPECT_EQ(r0.slices[t].ranks, r1.slices[t].ranks);
    EXPECT_EQ(r0.slices[t].ranks, r2.slices[t].ranks);
  }
}

TEST(Contracted, GradedLawMatchesZeroPsi) {
  TruncatedU U0(symplectic_zero(), 5), U1(symplectic(1), 5);
  BimoduleComplex c0(U0), c1(U1);
  auto r0 = contracted_complex(c0), r1 = contracted_complex(c1);
  EXPECT_TRUE(r0.all_exact);
  for (std::size_t t = 0; t < r0.slices.size(); ++t) {
    EXPECT_EQ(r0.slices[t].dims, r1.slices[t].dims);
    EXPECT_EQ(r0.slices[t].ranks, r1.slices[t].ranks);
  }
}

TEST(Wedge, PairFormulasAgree) {
  TruncatedU U(symplectic(1), 5);
  BimoduleComplex cx(U);
  for (std::size_t i = 1; i <= 2; ++i) {
    const auto generic = contracted_differentials(cx, i, 5);
    ASSERT_FALSE(generic.rows.empty());
    const auto own = i % 2 == 1 ? WedgeParity::odd : WedgeParity::even;
    EXPECT_TRUE(rows_equal(wedge_differentials(cx, i, 5, own, WedgeForm::corrected), generic)) << i;
    EXPECT_TRUE(rows_equal(wedge_differentials(cx, i, 5, own, WedgeForm::literal), generic)) << i;
    EXPECT_TRUE(rows_equal(wedge_differentials(cx, i, 5, WedgeParity::even_reduced, WedgeForm::literal), generic)) << i;
  }
  // odd positions: the odd and even displays give the same matrix
  EXPECT_TRUE(rows_equal(wedge_differentials(cx, 1, 5, WedgeParity::odd, WedgeForm::literal),
                         wedge_differentials(cx, 1, 5, WedgeParity::even_reduced, WedgeForm::literal)));
}

TEST(Wedge, CubicFormulas) {
  TruncatedU U(cubic(3, 1), 5);
  BimoduleComplex cx(U);
  const auto g1 = contracted_differentials(cx, 1, 5), g2 = contracted_differentials(cx, 2, 5);
  ASSERT_FALSE(g2.rows.empty());
  EXPECT_TRUE(rows_equal(wedge_differentials(cx, 1, 5, WedgeParity::odd, WedgeForm::literal), g1));
  EXPECT_TRUE(rows_equal(wedge_differentials(cx, 2, 5, WedgeParity::even, WedgeForm::corrected), g2));
  // one ordering per subset misses the other orderings of the removed letters
  EXPECT_FALSE(rows_equal(wedge_differentials(cx, 2, 5, WedgeParity::even, WedgeForm::literal), g2));
  EXPECT_THROW(wedge_differentials(cx, 2, 5, WedgeParity::even_reduced, WedgeForm::literal), std::invalid_argument);
}
