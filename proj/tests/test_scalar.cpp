#include "koszul/scalar.hpp"

#include <gtest/gtest.h>

#include <random>

using koszul::Scalar;

TEST(Scalar, RationalCanonicalForm) {
  Scalar a(6, -4);
  EXPECT_EQ(a.to_string(), "-3/2");
  EXPECT_TRUE(a.rational_value().get_den() > 0);
  EXPECT_EQ(Scalar(2, 4), Scalar(1, 2));
  EXPECT_THROW(Scalar(1, 0), koszul::ScalarError);
}

TEST(Scalar, CyclotomicPolynomials) {
  EXPECT_EQ(koszul::cyclotomic_polynomial(1), (std::vector<long>{-1, 1}));
  EXPECT_EQ(koszul::cyclotomic_polynomial(3), (std::vector<long>{1, 1, 1}));
  EXPECT_EQ(koszul::cyclotomic_polynomial(4), (std::vector<long>{1, 0, 1}));
  EXPECT_EQ(koszul::cyclotomic_polynomial(6), (std::vector<long>{1, -1, 1}));
  EXPECT_EQ(koszul::cyclotomic_polynomial(12), (std::vector<long>{1, 0, -1, 0, 1}));
  for (int m = 1; m <= 30; ++m)
    EXPECT_EQ(static_cast<int>(koszul::cyclotomic_polynomial(m).size()) - 1, koszul::euler_phi(m)) << m;
}

TEST(Scalar, PhiOfZetaVanishes) {
  for (int m : {3, 4, 5, 7, 8, 9, 12, 15}) {
    auto poly = koszul::cyclotomic_polynomial(m);
    Scalar z = Scalar::zeta(m), acc, power(1);
    for (long c : poly) {
      acc += Scalar(c) * power;
      power *= z;
    }
    EXPECT_TRUE(acc.is_zero()) << m;
    EXPECT_TRUE(z.pow(m).is_one()) << m;
    for (int k = 1; k < m; ++k) EXPECT_FALSE(z.pow(k).is_one()) << m << " " << k;
  }
}

TEST(Scalar, ZetaThreeRelations) {
  Scalar z = Scalar::zeta(3);
  EXPECT_EQ(z * z + z + Scalar(1), Scalar(0));
  EXPECT_EQ(z.inverse(), z * z);
  EXPECT_EQ((z * z).to_string(), "-zeta - 1");
}

TEST(Scalar, FieldAxiomsRandom) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> d(-5, 5);
  for (int m : {1, 3, 5, 8}) {
    int phi = koszul::euler_phi(m);
    auto rnd = [&] {
      std::vector<mpq_class> c;
      for (int i = 0; i < phi; ++i) c.emplace_back(d(rng), 1 + std::abs(d(rng)));
      return Scalar::from_coeffs(c, m);
    };
    for (int t = 0; t < 50; ++t) {
      Scalar a = rnd(), b = rnd(), c = rnd();
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a * b, b * a);
      if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), Scalar(1));
      Scalar e = a;
      e.sub_mul(b, c);
      EXPECT_EQ(e, a - b * c);
    }
  }
}

TEST(Scalar, ParseRoundTrip) {
  for (const char* s : {"3/2", "0", "-1", "zeta^2 - 1/3", "2*zeta + 1", "-zeta"}) {
    Scalar x = Scalar::parse(s, 5);
    EXPECT_EQ(Scalar::parse(x.to_string(), 5), x) << s;
  }
  EXPECT_EQ(Scalar::parse("zeta^3", 3), Scalar(1));
  EXPECT_EQ(Scalar::parse("zeta^2 + zeta", 3), Scalar(-1));
  EXPECT_THROW(Scalar::parse("zeta +", 3), koszul::ScalarError);
}

TEST(Scalar, RationalPromotes) {
  Scalar z = Scalar::zeta(4);
  Scalar h(1, 2);
  EXPECT_EQ((z * h + h).conductor(), 4);
  EXPECT_EQ(z * z, Scalar(-1));
  EXPECT_TRUE((z * z).is_rational());
  EXPECT_THROW(Scalar::zeta(3) + Scalar::zeta(5), koszul::ScalarError);
}
