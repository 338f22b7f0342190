#include <gtest/gtest.h>

#include <random>

#include "paraclose/poly_io.hpp"
#include "paraclose/polynomial.hpp"
#include "test_support.hpp"

using namespace paraclose;
using paraclose::test_support::P;
using paraclose::test_support::pring;
using paraclose::test_support::qring;

namespace {

// Independent oracle: binary exponentiation built only on operator*.
template <CoefficientField F>
Polynomial<F> power_by_squaring(Polynomial<F> base, std::uint64_t n) {
  Polynomial<F> acc = Polynomial<F>::constant(base.ring(), 1);
  while (n > 0) {
    if (n % 2 == 1) acc = acc * base;
    base = base * base;
    n /= 2;
  }
  return acc;
}

}  // namespace

TEST(PolyAdd, Examples) {
  auto r = qring({"x", "y"});
  EXPECT_EQ(P(r, "x+y") + P(r, "x-y"), P(r, "2*x"));
  EXPECT_EQ(P(r, "x^2 + 3*y") + Polynomial<RationalField>(r), P(r, "x^2+3y"));
  auto r2 = pring(2, {"x", "y"});
  EXPECT_TRUE((P(r2, "x+y") + P(r2, "x+y")).is_zero());
}

TEST(PolyAdd, RingMismatch) {
  auto a = qring({"x", "y"});
  auto b = qring({"y", "x"});
  EXPECT_THROW(P(a, "x") + P(b, "x"), RingMismatch);
}

TEST(PolyMul, Examples) {
  auto r = qring({"x", "y"});
  EXPECT_EQ(P(r, "(x+y)*(x-y)"), P(r, "x^2-y^2"));
  EXPECT_EQ(P(r, "x^2*y + 7") * P(r, "1"), P(r, "x^2*y + 7"));
  auto r2 = pring(2, {"x", "y"});
  EXPECT_EQ(P(r2, "(x+y)^2"), P(r2, "x^2+y^2"));
}

TEST(Frobenius, Examples) {
  auto r3 = pring(3, {"x", "y"});
  EXPECT_EQ(frobenius_power(P(r3, "x+y"), 1), P(r3, "x^3+y^3"));
  auto r5 = pring(5, {"x", "y"});
  auto f = P(r5, "2*x+y");
  EXPECT_EQ(frobenius_power(f, 1), P(r5, "2*x^5+y^5"));
  EXPECT_EQ(frobenius_power(f, 1), power_by_squaring(f, 5));
  EXPECT_EQ(frobenius_power(f, 0), f);
}

TEST(Frobenius, WrongCharacteristic) {
  auto r = qring({"x"});
  EXPECT_THROW(frobenius_power(P(r, "x+1"), 1), WrongCharacteristic);
}

TEST(Frobenius, MatchesSquaringOracle) {
  std::mt19937 rng(paraclose::test_support::kDefaultSeed);
  for (std::uint64_t p : {2, 3, 5}) {
    auto r = pring(p, {"x", "y", "z"});
    for (int trial = 0; trial < 10; ++trial) {
      auto f = paraclose::test_support::random_polynomial(r, rng, 3, 4);
      std::uint64_t q = 1;
      for (unsigned e = 1; e <= 2; ++e) {
        q *= p;
        auto fast = frobenius_power(f, e);
        EXPECT_TRUE(fast.is_canonical());
        EXPECT_EQ(fast, power_by_squaring(f, q)) << "p=" << p << " e=" << e << " f=" << to_string(f);
      }
    }
  }
}

TEST(Substitute, ScaleMap) {
  // S1 x + S2 y with S_i -> r T_i
  auto src = qring({"x", "y", "S1", "S2"});
  auto dst = qring({"x", "y", "r", "T1", "T2"});
  auto f = P(src, "S1*x + S2*y");
  std::vector<Polynomial<RationalField>> images{P(dst, "x"), P(dst, "y"), P(dst, "r*T1"), P(dst, "r*T2")};
  EXPECT_EQ(substitute(f, std::span<const Polynomial<RationalField>>(images)), P(dst, "r*(T1*x + T2*y)"));
}

TEST(Substitute, IdentityMap) {
  auto r = qring({"x", "y"});
  auto f = P(r, "3/2*x^2*y - y + 5");
  std::vector<Polynomial<RationalField>> images{P(r, "x"), P(r, "y")};
  EXPECT_EQ(substitute(f, std::span<const Polynomial<RationalField>>(images)), f);
}

TEST(Substitute, TranslateMap) {
  // f1 = x, f2 = y, a1 = y, a2 = -x so a = a1 f1 + a2 f2 = 0 + ... ; use a1 = x, a2 = y, a = x^2 + y^2
  auto src = qring({"x", "y", "S1", "S2"});
  auto dst = qring({"x", "y", "T1", "T2"});
  auto f = P(src, "S1*x + S2*y + x*y");
  std::map<std::string, Polynomial<RationalField>> map{{"S1", P(dst, "T1 + x")}, {"S2", P(dst, "T2 + y")}};
  EXPECT_EQ(substitute(f, map, dst), P(dst, "T1*x + T2*y + (x^2 + y^2 + x*y)"));
}

TEST(Substitute, ArityMismatch) {
  auto r = qring({"x", "y"});
  std::vector<Polynomial<RationalField>> images{P(r, "x")};
  EXPECT_THROW(substitute(P(r, "x"), std::span<const Polynomial<RationalField>>(images)), ArityMismatch);
}

TEST(PolyProperties, CanonicalRingAxiomsMultiplicativeSubstitution) {
  std::mt19937 rng(paraclose::test_support::kDefaultSeed);
  auto r = qring({"x", "y", "z"});
  auto r5 = pring(5, {"x", "y", "z"}, MonomialOrder::lex());
  std::vector<Polynomial<RationalField>> images{P(r, "x+y"), P(r, "z^2-1/2"), P(r, "x*y*z")};
  for (int i = 0; i < 40; ++i) {
    auto f = paraclose::test_support::random_polynomial(r, rng, 3, 5);
    auto g = paraclose::test_support::random_polynomial(r, rng, 3, 5);
    auto h = paraclose::test_support::random_polynomial(r, rng, 2, 3);
    EXPECT_TRUE((f + g).is_canonical());
    EXPECT_TRUE((f * g).is_canonical());
    EXPECT_EQ((f + g) * h, f * h + g * h);
    EXPECT_EQ(f * g, g * f);
    auto span = std::span<const Polynomial<RationalField>>(images);
    EXPECT_EQ(substitute(f * g, span), substitute(f, span) * substitute(g, span));

    auto a = paraclose::test_support::random_polynomial(r5, rng, 3, 5);
    auto b = paraclose::test_support::random_polynomial(r5, rng, 3, 5);
    EXPECT_TRUE((a * b).is_canonical());
    EXPECT_EQ(a * b, b * a);
  }
}

TEST(MonomialOrder, Basics) {
  auto grevlex = MonomialOrder::grevlex();
  auto lex = MonomialOrder::lex();
  Monomial x2{2, 0, 0}, xy{1, 1, 0}, z3{0, 0, 3}, one{0, 0, 0}, xz{1, 0, 1}, y2{0, 2, 0};
  EXPECT_TRUE(lex.greater(x2, z3));
  EXPECT_TRUE(grevlex.greater(z3, x2));
  EXPECT_TRUE(grevlex.greater(y2, xz));  // grevlex: y^2 > xz
  EXPECT_TRUE(grevlex.greater(xy, y2));
  EXPECT_TRUE(grevlex.greater(xy, one));
  auto elim = MonomialOrder::elimination(1);
  EXPECT_TRUE(elim.greater(Monomial{1, 0, 0}, Monomial{0, 5, 5}));
}

TEST(MonomialOrder, MultiplicativeOnRandomTriples) {
  std::mt19937 rng(paraclose::test_support::kDefaultSeed);
  std::uniform_int_distribution<unsigned> e(0, 4);
  for (auto order : {MonomialOrder::lex(), MonomialOrder::grevlex(), MonomialOrder::elimination(2)}) {
    for (int i = 0; i < 500; ++i) {
      Monomial u{e(rng), e(rng), e(rng), e(rng)}, v{e(rng), e(rng), e(rng), e(rng)},
          w{e(rng), e(rng), e(rng), e(rng)};
      if (order.greater(u, v)) EXPECT_TRUE(order.greater(u * w, v * w));
      EXPECT_FALSE(order.greater(Monomial{0, 0, 0, 0}, u));
    }
  }
}

TEST(PolyIo, PrintAndParse) {
  auto r = qring({"x", "y", "z"});
  EXPECT_EQ(to_string(P(r, "3/2*x^2*y - z + 1")), "3/2*x^2*y - z + 1");
  EXPECT_EQ(to_string(P(r, "-x -y")), "-x - y");
  EXPECT_EQ(to_string(P(r, "2x y^2")), "2*x*y^2");
  EXPECT_EQ(to_string(P(r, "0")), "0");
  EXPECT_EQ(to_string(P(r, "-1/3")), "-1/3");
  auto r7 = pring(7, {"x"});
  EXPECT_EQ(to_string(P(r7, "-x + 1/2")), "6*x + 4");
}

TEST(PolyIo, ParseErrors) {
  auto r = qring({"x", "y"});
  EXPECT_THROW(P(r, "x +"), ParseError);
  EXPECT_THROW(P(r, "x*w"), ParseError);
  EXPECT_THROW(P(r, "(x"), ParseError);
  EXPECT_THROW(P(r, ""), ParseError);
  EXPECT_THROW(P(r, "x^"), ParseError);
  try {
    P(r, "x + ?");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 5u);
  }
}

TEST(PolyIo, RoundTripRandom) {
  std::mt19937 rng(paraclose::test_support::kDefaultSeed);
  auto r = qring({"x", "y", "T1"});
  auto r3 = pring(3, {"a", "b"});
  for (int i = 0; i < 50; ++i) {
    auto f = paraclose::test_support::random_polynomial(r, rng, 4, 6).scaled(Rational(1, 1 + i % 4));
    EXPECT_EQ(P(r, to_string(f)), f);
    auto g = paraclose::test_support::random_polynomial(r3, rng, 4, 6);
    EXPECT_EQ(P(r3, to_string(g)), g);
  }
}

TEST(PolyMisc, DivideExactAndMapTo) {
  auto r = qring({"x", "y"});
  auto q = P(r, "(x^2 - y)*(x + 3*y)").divide_exact(P(r, "x+3y"));
  ASSERT_TRUE(q);
  EXPECT_EQ(*q, P(r, "x^2-y"));
  EXPECT_FALSE(P(r, "x^2 + 1").divide_exact(P(r, "x")));
  auto big = qring({"t", "x", "y"}, MonomialOrder::elimination(1));
  auto f = P(r, "x^3 - 2*y").map_to(big);
  EXPECT_TRUE(f.is_canonical());
  EXPECT_EQ(f.map_to(r), P(r, "x^3-2y"));
  EXPECT_THROW(P(big, "t*x").map_to(r), RingMismatch);
}

TEST(Monomial, OverflowChecked) {
  Monomial big{1u << 29};
  EXPECT_THROW(big.pow(4), ExponentOverflow);
  EXPECT_THROW(big * big * big, ExponentOverflow);
}
