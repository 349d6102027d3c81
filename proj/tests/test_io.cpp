#include "koszul/io.hpp"

#include <gtest/gtest.h>

#include "support.hpp"

using namespace koszul;
using namespace koszul::testing;

namespace {

template <class T>
T round_trip(const T& r) {
  json j = r;
  return json::parse(j.dump()).get<T>();
}

json symplectic_input() {
  return json::parse(R"({
    "builder": "symplectic_reflection",
    "context": {"conductor": 1, "dimV": 2, "group_generators": [[["-1", "0"], ["0", "-1"]]]},
    "omega": [["0", "1"], ["-1", "0"]],
    "m": ["1", "1"]
  })");
}

}  // namespace

TEST(Io, ScalarsAndMismatch) {
  EXPECT_EQ(io::scalar_from("3/2", 1), Scalar(3, 2));
  EXPECT_EQ(io::scalar_from(-4, 1), Scalar(-4));
  const Scalar z = Scalar::zeta(3);
  EXPECT_EQ(io::scalar_from(io::scalar_to(z * z - Scalar(1, 3)), 3), z * z - Scalar(1, 3));
  EXPECT_THROW(io::scalar_from("zeta", 1), InputError);
  EXPECT_THROW(io::scalar_from("1/0", 1), InputError);
  EXPECT_THROW(io::scalar_from(true, 1), InputError);
}

TEST(Io, ContextRoundTrip) {
  auto j = json::parse(R"({"conductor": 3, "dimV": 2, "group_generators": [[["zeta", "0"], ["0", "zeta^2"]]]})");
  auto ctx = io::context_from(j);
  EXPECT_EQ(ctx->group_order(), 3u);
  auto back = io::context_from(io::context_to(*ctx));
  EXPECT_TRUE(*back == *ctx);
  EXPECT_THROW(io::context_from(json::parse(R"({"conductor": 1, "dimV": 2, "group_generators": [[["0","0"],["0","0"]]]})")),
               InputError);
  EXPECT_THROW(io::context_from(json::parse(R"({"conductor": 1, "dimV": 2, "group_generators": [["1","2","3"]]})")),
               InputError);
  EXPECT_THROW(io::context_from(json::parse(R"({"conductor": 1})")), InputError);
}

TEST(Io, PresentationRoundTrips) {
  std::vector<json> inputs{
      json::parse(R"({"builder": "down_up", "alpha": "2", "beta": "-1", "gamma": "1"})"),
      json::parse(R"({"builder": "lie", "dimV": 3, "structure_constants": [[1,2,3,"2"],[3,1,1,"1"],[3,2,2,"-1"]]})"),
      symplectic_input(),
      json::parse(R"({"context": {"dimV": 2}, "N": 2, "family": "weyl",
                      "P": [[{"coeff": "1", "word": [1, 2]}, {"coeff": "-1", "word": [2, 1]}, {"coeff": "-1", "word": []}]]})"),
  };
  for (const auto& in : inputs) {
    auto pres = io::presentation_from(in);
    auto back = io::presentation_from(json::parse(io::presentation_to(pres).dump()));
    EXPECT_TRUE(*back.ctx == *pres.ctx);
    EXPECT_EQ(back.N, pres.N);
    EXPECT_EQ(back.family, pres.family);
    EXPECT_TRUE(back.P.space() == pres.P.space()) << in.dump();
  }
}

TEST(Io, PsiRoundTripAndBuilders) {
  auto G = group_from_generators(2, {int_matrix(2, {-1, 0, 0, -1})});
  auto psi = io::psi_from(symplectic_input(), G, 1);
  EXPECT_EQ(io::psi_from(json::parse(io::psi_to(psi).dump()), G, 1), psi);
  auto c45 = json::parse(R"({"builder": "corollary45", "p": 2, "phi": {"[1,2]": "1"}, "m": ["1", "0"]})");
  EXPECT_TRUE(theorem_44_verdict(G, io::psi_from(c45, G, 1)).holds());
  EXPECT_THROW(io::psi_from(json::parse(R"({"p": 2, "psi": [{"g": 0, "values": {"[2,1]": "1"}}]})"), G, 1), InputError);
  EXPECT_THROW(io::psi_from(json::parse(R"({"p": 2, "psi": [{"g": 5, "values": {}}]})"), G, 1), InputError);
  EXPECT_THROW(io::psi_from(json::parse(R"({"builder": "corollary45", "p": 2, "phi": {"[1,2]": "1"}, "m": ["1"]})"), G, 1),
               InputError);
}

TEST(Io, MalformedInputs) {
  EXPECT_THROW(io::presentation_from(json::parse("[1, 2]")), InputError);
  EXPECT_THROW(io::presentation_from(json::parse(R"({"builder": "nope"})")), InputError);
  EXPECT_THROW(io::presentation_from(json::parse(R"({"builder": "down_up", "alpha": "1", "beta": "0", "gamma": "0"})")),
               InputError);
  EXPECT_THROW(io::presentation_from(json::parse(R"({"context": {"dimV": 2}, "N": 2, "P": [[{"coeff": "1", "word": [1, 2, 1]}]]})")),
               InputError);
  EXPECT_THROW(io::presentation_from(json::parse(R"({"context": {"dimV": 2}, "N": 2, "P": [[{"coeff": "1", "word": [3]}]]})")),
               InputError);
  EXPECT_THROW(io::presentation_from(json::parse(R"({"context": {"dimV": 2}, "N": 2, "P": [[{"word": [1]}]]})")), InputError);
}

TEST(Io, ReportRoundTrips) {
  auto pres = io::presentation_from(json::parse(R"({"builder": "down_up", "alpha": "2", "beta": "-1", "gamma": "1"})"));
  auto pbw = pbw_verdict(pres, 6);
  EXPECT_EQ(round_trip(pbw), pbw);
  auto A = homogenization(pres);
  auto cert = koszul_complex_check(A, 5);
  EXPECT_EQ(round_trip(cert), cert);
  auto tor3 = check_tor3_concentration(A, 6);
  EXPECT_EQ(round_trip(tor3), tor3);

  // a J failure carries witnesses
  auto lie = io::presentation_from(
      json::parse(R"({"builder": "lie", "dimV": 3, "structure_constants": [[1,3,3,"1"],[2,3,2,"1"]]})"));
  auto J = check_condition_J(lie);
  EXPECT_FALSE(J.holds());
  EXPECT_FALSE(J.witness.empty());
  EXPECT_EQ(round_trip(J), J);

  auto sym = io::presentation_from(symplectic_input());
  auto G = sym.ctx->group();
  auto psi = io::psi_from(symplectic_input(), G, 1);
  auto t44 = theorem_44_verdict(G, psi);
  EXPECT_EQ(round_trip(t44), t44);
  TruncatedU U(sym, 4);
  BimoduleComplex cx(U);
  auto nc = check_dN_zero(cx, Scalar(-1));
  EXPECT_EQ(round_trip(nc), nc);
  auto cc = contracted_complex(cx);
  EXPECT_EQ(round_trip(cc), cc);
}
