#ifndef PARACLOSE_FIELD_HPP
#define PARACLOSE_FIELD_HPP

// Exact coefficient fields: the rationals and prime fields F_p with p < 2^31.

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "paraclose/errors.hpp"

namespace paraclose {

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(implicit)
  Rational(const mpz_class& value) : value_(value) {}  // NOLINT(implicit)
  Rational(const mpz_class& numerator, const mpz_class& denominator) {
    if (denominator == 0) throw ZeroInverse("rational with zero denominator");
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
  }
  explicit Rational(mpq_class value) : value_(std::move(value)) {
    value_.canonicalize();
  }

  /// Parses "a" or "a/b" with an optional leading sign.
  static std::optional<Rational> parse(std::string_view text) {
    std::string s(text);
    if (s.empty()) return std::nullopt;
    auto slash = s.find('/');
    mpz_class num, den = 1;
    if (num.set_str(s.substr(0, slash), 10) != 0) return std::nullopt;
    if (slash != std::string::npos) {
      if (den.set_str(s.substr(slash + 1), 10) != 0) return std::nullopt;
      if (den == 0) return std::nullopt;
    }
    return Rational(num, den);
  }

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  const mpq_class& value() const noexcept { return value_; }

  bool is_zero() const noexcept { return sgn(value_) == 0; }
  bool is_one() const noexcept { return value_ == 1; }
  int sign() const noexcept { return sgn(value_); }

  Rational inverse() const {
    if (is_zero()) throw ZeroInverse("inverse of 0 in Q");
    return Rational(mpq_class(1) / value_);
  }

  std::string to_string() const { return value_.get_str(); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.value_ + b.value_));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.value_ - b.value_));
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.value_ * b.value_));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw ZeroInverse("division by 0 in Q");
    return Rational(mpq_class(a.value_ / b.value_));
  }
  Rational operator-() const { return Rational(mpq_class(-value_)); }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.value_ == b.value_;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.value_ < b.value_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return a.value_ <= b.value_;
  }

 private:
  mpq_class value_;
};

/// Deterministic Miller-Rabin; bases {2,3,5,7} are exact below 3.2e9.
constexpr bool is_prime_u32(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2u, 3u, 5u, 7u}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  auto powmod = [n](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    b %= n;
    while (e) {
      if (e & 1) r = r * b % n;
      b = b * b % n;
      e >>= 1;
    }
    return r;
  };
  for (std::uint64_t a : {2u, 3u, 5u, 7u}) {
    std::uint64_t x = powmod(a, d);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = x * x % n;
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// Element of F_p. Carries its modulus; mixing moduli is a RingMismatch.
class Zp {
 public:
  Zp(std::uint32_t residue, std::uint32_t modulus)
      : residue_(residue % modulus), modulus_(modulus) {}

  std::uint32_t residue() const noexcept { return residue_; }
  std::uint32_t modulus() const noexcept { return modulus_; }
  bool is_zero() const noexcept { return residue_ == 0; }
  bool is_one() const noexcept { return residue_ == 1; }

  Zp inverse() const {
    if (residue_ == 0) throw ZeroInverse("inverse of 0 in F_" + std::to_string(modulus_));
    // extended Euclid on (residue, modulus)
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = modulus_, new_r = residue_;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (t < 0) t += modulus_;
    return Zp(static_cast<std::uint32_t>(t), modulus_, raw_tag{});
  }

  Zp pow(std::uint64_t e) const {
    std::uint64_t r = 1, b = residue_;
    while (e) {
      if (e & 1) r = r * b % modulus_;
      b = b * b % modulus_;
      e >>= 1;
    }
    return Zp(static_cast<std::uint32_t>(r), modulus_, raw_tag{});
  }

  std::string to_string() const { return std::to_string(residue_); }

  friend Zp operator+(Zp a, Zp b) {
    check(a, b);
    std::uint32_t s = a.residue_ + b.residue_;
    if (s >= a.modulus_) s -= a.modulus_;
    return Zp(s, a.modulus_, raw_tag{});
  }
  friend Zp operator-(Zp a, Zp b) {
    check(a, b);
    std::uint32_t s = a.residue_ >= b.residue_ ? a.residue_ - b.residue_
                                               : a.residue_ + a.modulus_ - b.residue_;
    return Zp(s, a.modulus_, raw_tag{});
  }
  friend Zp operator*(Zp a, Zp b) {
    check(a, b);
    return Zp(static_cast<std::uint32_t>(
                  static_cast<std::uint64_t>(a.residue_) * b.residue_ % a.modulus_),
              a.modulus_, raw_tag{});
  }
  friend Zp operator/(Zp a, Zp b) { return a * b.inverse(); }
  Zp operator-() const {
    return Zp(residue_ == 0 ? 0 : modulus_ - residue_, modulus_, raw_tag{});
  }
  Zp& operator+=(Zp o) { return *this = *this + o; }
  Zp& operator-=(Zp o) { return *this = *this - o; }
  Zp& operator*=(Zp o) { return *this = *this * o; }

  friend bool operator==(Zp a, Zp b) noexcept {
    return a.residue_ == b.residue_ && a.modulus_ == b.modulus_;
  }

 private:
  struct raw_tag {};
  Zp(std::uint32_t residue, std::uint32_t modulus, raw_tag)
      : residue_(residue), modulus_(modulus) {}

  static void check(Zp a, Zp b) {
    if (a.modulus_ != b.modulus_) {
      throw RingMismatch("F_" + std::to_string(a.modulus_) + " vs F_" +
                         std::to_string(b.modulus_));
    }
  }

  std::uint32_t residue_;
  std::uint32_t modulus_;
};

class RationalField {
 public:
  using value_type = Rational;

  Rational zero() const { return Rational(0); }
  Rational one() const { return Rational(1); }
  Rational from_integer(long n) const { return Rational(n); }
  Rational from_rational(const Rational& q) const { return q; }
  std::uint64_t characteristic() const noexcept { return 0; }
  std::string name() const { return "Q"; }

  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

class PrimeField {
 public:
  using value_type = Zp;

  explicit PrimeField(std::uint64_t p) {
    if (p >= (std::uint64_t{1} << 31)) {
      throw NotPrime(std::to_string(p) + " is not below 2^31");
    }
    if (!is_prime_u32(p)) throw NotPrime(std::to_string(p) + " is composite");
    p_ = static_cast<std::uint32_t>(p);
  }

  Zp zero() const { return Zp(0, p_); }
  Zp one() const { return Zp(1, p_); }
  Zp from_integer(long n) const {
    long r = n % static_cast<long>(p_);
    if (r < 0) r += p_;
    return Zp(static_cast<std::uint32_t>(r), p_);
  }
  Zp from_integer(const mpz_class& n) const {
    mpz_class r = n % p_;
    if (r < 0) r += p_;
    return Zp(static_cast<std::uint32_t>(r.get_ui()), p_);
  }
  /// Reduction of a rational; BadPrime when p divides the denominator.
  Zp from_rational(const Rational& q) const {
    mpz_class den = q.denominator();
    if (den % p_ == 0) {
      throw BadPrime(std::to_string(p_) + " divides denominator of " + q.to_string());
    }
    return from_integer(q.numerator()) / from_integer(den);
  }
  std::uint64_t characteristic() const noexcept { return p_; }
  std::uint32_t modulus() const noexcept { return p_; }
  std::string name() const { return "Fp:" + std::to_string(p_); }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  std::uint32_t p_ = 2;
};

template <class F>
concept CoefficientField =
    std::equality_comparable<F> &&
    requires(const F f, const typename F::value_type a, long n, const Rational q) {
      { f.zero() } -> std::same_as<typename F::value_type>;
      { f.one() } -> std::same_as<typename F::value_type>;
      { f.from_integer(n) } -> std::same_as<typename F::value_type>;
      { f.from_rational(q) } -> std::same_as<typename F::value_type>;
      { f.characteristic() } -> std::convertible_to<std::uint64_t>;
      { f.name() } -> std::convertible_to<std::string>;
      { a + a } -> std::same_as<typename F::value_type>;
      { a - a } -> std::same_as<typename F::value_type>;
      { a * a } -> std::same_as<typename F::value_type>;
      { a / a } -> std::same_as<typename F::value_type>;
      { -a } -> std::same_as<typename F::value_type>;
      { a.inverse() } -> std::same_as<typename F::value_type>;
      { a.is_zero() } -> std::convertible_to<bool>;
      { a.to_string() } -> std::convertible_to<std::string>;
      { a == a } -> std::convertible_to<bool>;
    };

static_assert(CoefficientField<RationalField>);
static_assert(CoefficientField<PrimeField>);

/// Field inverse with the ZeroInverse contract.
template <class T>
T field_inverse(const T& a) {
  return a.inverse();
}

}  // namespace paraclose

#endif  // PARACLOSE_FIELD_HPP
