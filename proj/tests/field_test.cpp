#include <gtest/gtest.h>

#include <random>

#include "paraclose/field.hpp"
#include "test_support.hpp"

using namespace paraclose;

TEST(FieldInverse, Examples) {
  EXPECT_EQ(field_inverse(Rational(1)), Rational(1));
  PrimeField f5(5);
  EXPECT_EQ(field_inverse(f5.from_integer(2)), f5.from_integer(3));
  EXPECT_EQ(field_inverse(Rational(-3, 4)), Rational(-4, 3));
}

TEST(FieldInverse, ZeroThrows) {
  EXPECT_THROW(field_inverse(Rational(0)), ZeroInverse);
  EXPECT_THROW(field_inverse(PrimeField(7).zero()), ZeroInverse);
}

TEST(PrimeField, RejectsComposites) {
  EXPECT_THROW(PrimeField(1), NotPrime);
  EXPECT_THROW(PrimeField(9), NotPrime);
  EXPECT_THROW(PrimeField(561), NotPrime);          // Carmichael
  EXPECT_THROW(PrimeField(2147483648ULL), NotPrime);  // 2^31
  EXPECT_NO_THROW(PrimeField(2147483647));          // 2^31 - 1
  EXPECT_NO_THROW(PrimeField(2));
}

TEST(PrimeField, PrimalityMatchesTrialDivision) {
  auto trial = [](std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) return false;
    }
    return true;
  };
  for (std::uint64_t n = 0; n < 5000; ++n) EXPECT_EQ(is_prime_u32(n), trial(n)) << n;
  // strong pseudoprimes to several small bases
  EXPECT_FALSE(is_prime_u32(1373653ULL));  // strong pseudoprime to bases 2, 3
  EXPECT_FALSE(is_prime_u32(25326001ULL));
}

TEST(PrimeField, FermatExhaustive) {
  for (std::uint64_t p : {2, 3, 5, 7}) {
    PrimeField f(p);
    for (std::uint64_t a = 0; a < p; ++a) {
      auto x = f.from_integer(static_cast<long>(a));
      EXPECT_EQ(x.pow(p), x) << "p=" << p << " a=" << a;
    }
  }
}

TEST(PrimeField, MixedModuliMismatch) {
  EXPECT_THROW(PrimeField(5).one() + PrimeField(7).one(), RingMismatch);
}

TEST(PrimeField, ReduceRational) {
  PrimeField f3(3);
  EXPECT_EQ(f3.from_rational(Rational(1, 2)), f3.from_integer(2));
  EXPECT_THROW(f3.from_rational(Rational(1, 3)), BadPrime);
  EXPECT_EQ(f3.from_integer(-1), f3.from_integer(2));
}

TEST(Rational, CanonicalForm) {
  Rational a(6, -4);
  EXPECT_EQ(a.numerator(), -3);
  EXPECT_EQ(a.denominator(), 2);
  EXPECT_EQ(Rational(0, 5).denominator(), 1);
  EXPECT_EQ(Rational::parse("10/4")->to_string(), "5/2");
  EXPECT_FALSE(Rational::parse("1/0"));
  EXPECT_FALSE(Rational::parse("abc"));
}

template <class T, class Gen>
void check_axioms(Gen&& gen, int rounds) {
  for (int i = 0; i < rounds; ++i) {
    T a = gen(), b = gen(), c = gen();
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + b, b + a);
    if (!a.is_zero()) EXPECT_TRUE((a * a.inverse()).is_one());
  }
}

TEST(FieldProperties, RationalAxiomsAndReducedSums) {
  std::mt19937 rng(test_support::kDefaultSeed);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 30);
  auto gen = [&] { return Rational(num(rng), den(rng)); };
  check_axioms<Rational>(gen, 300);
  for (int i = 0; i < 300; ++i) {
    Rational s = gen() + gen();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), s.numerator().get_mpz_t(), s.denominator().get_mpz_t());
    EXPECT_EQ(g, 1);
    EXPECT_GT(s.denominator(), 0);
  }
}

TEST(FieldProperties, PrimeFieldAxioms) {
  std::mt19937 rng(test_support::kDefaultSeed);
  for (std::uint64_t p : {2ULL, 5ULL, 101ULL, 2147483647ULL}) {
    PrimeField f(p);
    std::uniform_int_distribution<long> dist(-1000000, 1000000);
    auto gen = [&] { return f.from_integer(dist(rng)); };
    check_axioms<Zp>(gen, 300);
  }
}
