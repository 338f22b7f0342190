#ifndef PARACLOSE_MONOMIAL_HPP
#define PARACLOSE_MONOMIAL_HPP

#include <boost/container/small_vector.hpp>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>

#include "paraclose/errors.hpp"

namespace paraclose {

/// Exponent vector X^a. Its length is fixed by the ambient ring.
class Monomial {
 public:
  using exponent_type = std::uint32_t;
  // Exponents beyond this bound are rejected so sums never wrap.
  static constexpr std::uint64_t kMaxExponent = std::uint64_t{1} << 30;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  Monomial(std::initializer_list<exponent_type> exps) : exps_(exps) { recompute(); }
  explicit Monomial(std::span<const exponent_type> exps)
      : exps_(exps.begin(), exps.end()) {
    recompute();
  }

  static Monomial unit(std::size_t nvars, std::size_t var, exponent_type e = 1) {
    Monomial m(nvars);
    m.exps_[var] = e;
    m.degree_ = e;
    return m;
  }

  std::size_t size() const noexcept { return exps_.size(); }
  exponent_type operator[](std::size_t i) const noexcept { return exps_[i]; }
  std::uint64_t degree() const noexcept { return degree_; }
  bool is_one() const noexcept { return degree_ == 0; }
  std::span<const exponent_type> exponents() const noexcept {
    return {exps_.data(), exps_.size()};
  }

  void set(std::size_t i, std::uint64_t e) {
    check(e);
    degree_ = degree_ - exps_[i] + e;
    exps_[i] = static_cast<exponent_type>(e);
  }

  bool divides(const Monomial& other) const noexcept {
    if (degree_ > other.degree_) return false;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      if (exps_[i] > other.exps_[i]) return false;
    }
    return true;
  }

  /// Componentwise a <= b (same as divisibility, read as a box bound).
  bool bounded_by(const Monomial& other) const noexcept { return divides(other); }

  bool coprime(const Monomial& other) const noexcept {
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      if (exps_[i] != 0 && other.exps_[i] != 0) return false;
    }
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (std::size_t i = 0; i < r.exps_.size(); ++i) {
      std::uint64_t e = std::uint64_t{a.exps_[i]} + b.exps_[i];
      check(e);
      r.exps_[i] = static_cast<exponent_type>(e);
    }
    r.degree_ = a.degree_ + b.degree_;
    return r;
  }

  /// Exact quotient; the caller guarantees b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (std::size_t i = 0; i < r.exps_.size(); ++i) r.exps_[i] -= b.exps_[i];
    r.degree_ = a.degree_ - b.degree_;
    return r;
  }

  Monomial pow(std::uint64_t n) const {
    Monomial r(*this);
    for (auto& e : r.exps_) {
      if (e != 0 && n > kMaxExponent / e) {
        throw ExponentOverflow("exponent " + std::to_string(e) + " * " + std::to_string(n));
      }
      e = static_cast<exponent_type>(e * n);
    }
    r.degree_ = degree_ * n;
    return r;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (std::size_t i = 0; i < r.exps_.size(); ++i) {
      r.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
    }
    r.recompute();
    return r;
  }

  friend Monomial gcd(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (std::size_t i = 0; i < r.exps_.size(); ++i) {
      r.exps_[i] = std::min(a.exps_[i], b.exps_[i]);
    }
    r.recompute();
    return r;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) noexcept {
    return a.degree_ == b.degree_ && a.exps_ == b.exps_;
  }

  /// Padding or truncation to a new variable count (new slots are zero).
  Monomial resized(std::size_t nvars) const {
    Monomial r(*this);
    r.exps_.resize(nvars, 0);
    r.recompute();
    return r;
  }

 private:
  static void check(std::uint64_t e) {
    if (e > kMaxExponent) throw ExponentOverflow("exponent " + std::to_string(e));
  }
  void recompute() {
    degree_ = 0;
    for (auto e : exps_) {
      check(e);
      degree_ += e;
    }
  }

  boost::container::small_vector<exponent_type, 8> exps_;
  std::uint64_t degree_ = 0;
};

/// Term order on monomials of a fixed arity.
class MonomialOrder {
 public:
  enum class Kind { Lex, Grevlex, Elimination };

  static MonomialOrder lex() { return MonomialOrder(Kind::Lex, 0); }
  static MonomialOrder grevlex() { return MonomialOrder(Kind::Grevlex, 0); }
  /// Variables [0, split) form the eliminated block; each block is grevlex.
  static MonomialOrder elimination(std::size_t split) {
    return MonomialOrder(Kind::Elimination, split);
  }

  Kind kind() const noexcept { return kind_; }
  std::size_t split() const noexcept { return split_; }

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const noexcept {
    switch (kind_) {
      case Kind::Lex:
        for (std::size_t i = 0; i < a.size(); ++i) {
          if (a[i] != b[i]) return a[i] <=> b[i];
        }
        return std::strong_ordering::equal;
      case Kind::Grevlex:
        return grevlex_block(a, b, 0, a.size(), a.degree(), b.degree());
      case Kind::Elimination: {
        std::size_t s = std::min(split_, a.size());
        std::uint64_t da = 0, db = 0;
        for (std::size_t i = 0; i < s; ++i) {
          da += a[i];
          db += b[i];
        }
        auto c = grevlex_block(a, b, 0, s, da, db);
        if (c != 0) return c;
        return grevlex_block(a, b, s, a.size(), a.degree() - da, b.degree() - db);
      }
    }
    return std::strong_ordering::equal;
  }

  bool greater(const Monomial& a, const Monomial& b) const noexcept {
    return compare(a, b) > 0;
  }

  std::string name() const {
    switch (kind_) {
      case Kind::Lex:
        return "lex";
      case Kind::Grevlex:
        return "grevlex";
      case Kind::Elimination:
        return "elim(" + std::to_string(split_) + ")";
    }
    return "?";
  }

  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) noexcept {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::Elimination || a.split_ == b.split_);
  }

 private:
  MonomialOrder(Kind kind, std::size_t split) : kind_(kind), split_(split) {}

  static std::strong_ordering grevlex_block(const Monomial& a, const Monomial& b,
                                            std::size_t lo, std::size_t hi,
                                            std::uint64_t da, std::uint64_t db) noexcept {
    if (da != db) return da <=> db;
    for (std::size_t i = hi; i-- > lo;) {
      if (a[i] != b[i]) return b[i] <=> a[i];
    }
    return std::strong_ordering::equal;
  }

  Kind kind_;
  std::size_t split_;
};

}  // namespace paraclose

#endif  // PARACLOSE_MONOMIAL_HPP
