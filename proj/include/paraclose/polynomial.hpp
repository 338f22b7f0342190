#ifndef PARACLOSE_POLYNOMIAL_HPP
#define PARACLOSE_POLYNOMIAL_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "paraclose/errors.hpp"
#include "paraclose/field.hpp"
#include "paraclose/monomial.hpp"

namespace paraclose {

/// K[x_1..x_n] with a fixed variable list and term order. Shared immutably
/// between the polynomials that live in it.
template <CoefficientField F>
class PolynomialRing {
 public:
  using field_type = F;

  PolynomialRing(F field, std::vector<std::string> names,
                 MonomialOrder order = MonomialOrder::grevlex())
      : field_(std::move(field)), names_(std::move(names)), order_(order) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (names_[i] == names_[j]) throw ArityMismatch("duplicate variable " + names_[i]);
      }
    }
  }

  const F& field() const noexcept { return field_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::size_t nvars() const noexcept { return names_.size(); }
  const MonomialOrder& order() const noexcept { return order_; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i] == name) return i;
    }
    return std::nullopt;
  }

  std::shared_ptr<const PolynomialRing> with_order(MonomialOrder order) const {
    return std::make_shared<const PolynomialRing>(field_, names_, order);
  }

  /// Same field and order, extra variables appended after the existing ones.
  std::shared_ptr<const PolynomialRing> extended(const std::vector<std::string>& extra) const {
    auto names = names_;
    names.insert(names.end(), extra.begin(), extra.end());
    return std::make_shared<const PolynomialRing>(field_, std::move(names), order_);
  }

  friend bool operator==(const PolynomialRing& a, const PolynomialRing& b) {
    return a.field_ == b.field_ && a.names_ == b.names_ && a.order_ == b.order_;
  }

 private:
  F field_;
  std::vector<std::string> names_;
  MonomialOrder order_;
};

template <CoefficientField F>
using RingPtr = std::shared_ptr<const PolynomialRing<F>>;

template <CoefficientField F>
RingPtr<F> make_ring(F field, std::vector<std::string> names,
                     MonomialOrder order = MonomialOrder::grevlex()) {
  return std::make_shared<const PolynomialRing<F>>(std::move(field), std::move(names), order);
}

template <CoefficientField F>
bool same_ring(const RingPtr<F>& a, const RingPtr<F>& b) {
  return a == b || *a == *b;
}

/// Sparse polynomial: nonzero terms in strictly descending term order.
template <CoefficientField F>
class Polynomial {
 public:
  using Coeff = typename F::value_type;
  struct Term {
    Coeff coeff;
    Monomial mono;
    friend bool operator==(const Term& a, const Term& b) {
      return a.coeff == b.coeff && a.mono == b.mono;
    }
  };

  explicit Polynomial(RingPtr<F> ring) : ring_(std::move(ring)) {}

  static Polynomial constant(RingPtr<F> ring, const Coeff& c) {
    Polynomial p(ring);
    if (!c.is_zero()) p.terms_.push_back({c, Monomial(ring->nvars())});
    return p;
  }
  static Polynomial constant(RingPtr<F> ring, long c) {
    auto v = ring->field().from_integer(c);
    return constant(std::move(ring), v);
  }
  static Polynomial term(RingPtr<F> ring, const Coeff& c, Monomial m) {
    if (m.size() != ring->nvars()) throw ArityMismatch("monomial arity");
    Polynomial p(ring);
    if (!c.is_zero()) p.terms_.push_back({c, std::move(m)});
    return p;
  }
  static Polynomial monomial(RingPtr<F> ring, Monomial m) {
    auto one = ring->field().one();
    return term(std::move(ring), one, std::move(m));
  }
  static Polynomial variable(RingPtr<F> ring, std::size_t index) {
    if (index >= ring->nvars()) throw ArityMismatch("variable index out of range");
    auto n = ring->nvars();
    return monomial(std::move(ring), Monomial::unit(n, index));
  }
  static Polynomial variable(RingPtr<F> ring, std::string_view name) {
    auto i = ring->index_of(name);
    if (!i) throw ArityMismatch("unknown variable " + std::string(name));
    return variable(std::move(ring), *i);
  }
  /// Canonicalizes arbitrary terms: sorts, merges duplicates, drops zeros.
  static Polynomial from_terms(RingPtr<F> ring, std::vector<Term> terms) {
    Polynomial p(std::move(ring));
    for (const auto& t : terms) {
      if (t.mono.size() != p.ring_->nvars()) throw ArityMismatch("monomial arity");
    }
    p.terms_ = std::move(terms);
    p.canonicalize();
    return p;
  }
  /// Adopts terms already in canonical order (checked only by is_canonical).
  static Polynomial from_sorted_terms(RingPtr<F> ring, std::vector<Term> terms) {
    Polynomial p(std::move(ring));
    p.terms_ = std::move(terms);
    return p;
  }

  const RingPtr<F>& ring() const noexcept { return ring_; }
  const F& field() const noexcept { return ring_->field(); }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
  }
  bool is_one() const noexcept {
    return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff == field().one();
  }

  const Term& lead() const { return terms_.front(); }
  const Monomial& lead_monomial() const { return terms_.front().mono; }
  const Coeff& lead_coeff() const { return terms_.front().coeff; }

  std::uint64_t total_degree() const noexcept {
    std::uint64_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
  }
  std::uint64_t degree_in(std::size_t var) const noexcept {
    std::uint64_t d = 0;
    for (const auto& t : terms_) d = std::max<std::uint64_t>(d, t.mono[var]);
    return d;
  }
  bool is_homogeneous() const noexcept {
    for (const auto& t : terms_) {
      if (t.mono.degree() != terms_.front().mono.degree()) return false;
    }
    return true;
  }
  Coeff coefficient(const Monomial& m) const {
    for (const auto& t : terms_) {
      if (t.mono == m) return t.coeff;
    }
    return field().zero();
  }

  /// Validator for the representation invariant.
  bool is_canonical() const {
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (terms_[i].coeff.is_zero()) return false;
      if (terms_[i].mono.size() != ring_->nvars()) return false;
      if (i > 0 && !ring_->order().greater(terms_[i - 1].mono, terms_[i].mono)) return false;
    }
    return true;
  }

  Polynomial operator-() const {
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    check_ring(a, b);
    return merge(a, b, a.field().one(), Monomial(a.ring_->nvars()), 0);
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    check_ring(a, b);
    return merge(a, b, -a.field().one(), Monomial(a.ring_->nvars()), 0);
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    check_ring(a, b);
    if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_);
    const Polynomial& small = a.size() <= b.size() ? a : b;
    const Polynomial& large = a.size() <= b.size() ? b : a;
    if (small.size() == 1) return large.mul_term(small.terms_[0].coeff, small.terms_[0].mono);
    std::vector<Term> prods;
    prods.reserve(a.size() * b.size());
    for (const auto& s : a.terms_) {
      for (const auto& t : b.terms_) prods.push_back({s.coeff * t.coeff, s.mono * t.mono});
    }
    Polynomial r(a.ring_);
    r.terms_ = std::move(prods);
    r.canonicalize();
    return r;
  }
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial scaled(const Coeff& c) const {
    if (c.is_zero()) return Polynomial(ring_);
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coeff = t.coeff * c;
    return r;
  }

  /// c * X^m * this; order is preserved by multiplicativity of the order.
  Polynomial mul_term(const Coeff& c, const Monomial& m) const {
    Polynomial r(ring_);
    if (c.is_zero()) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.coeff * c, t.mono * m});
    return r;
  }

  /// this + c * X^m * g, skipping the first `skip` terms of g.
  Polynomial add_scaled(const Coeff& c, const Monomial& m, const Polynomial& g,
                        std::size_t skip = 0) const {
    check_ring(*this, g);
    return merge(*this, g, c, m, skip);
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    return scaled(lead_coeff().inverse());
  }

  Polynomial pow(std::uint64_t n) const {
    Polynomial result = constant(ring_, field().one());
    Polynomial base = *this;
    while (n) {
      if (n & 1) result = result * base;
      n >>= 1;
      if (n) base = base * base;
    }
    return result;
  }

  /// Terms whose exponent vector is componentwise <= box.
  Polynomial truncated(const Monomial& box) const {
    Polynomial r(ring_);
    for (const auto& t : terms_) {
      if (t.mono.bounded_by(box)) r.terms_.push_back(t);
    }
    return r;
  }

  /// Re-expresses this polynomial in `target`, matching variables by name.
  /// Variables absent from `target` must not occur.
  Polynomial map_to(const RingPtr<F>& target) const {
    if (ring_ == target) return *this;
    if (!(target->field() == field())) throw RingMismatch("field " + field().name());
    std::vector<std::optional<std::size_t>> index(ring_->nvars());
    for (std::size_t i = 0; i < ring_->nvars(); ++i) {
      index[i] = target->index_of(ring_->names()[i]);
    }
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      Monomial m(target->nvars());
      for (std::size_t i = 0; i < ring_->nvars(); ++i) {
        if (t.mono[i] == 0) continue;
        if (!index[i]) {
          throw RingMismatch("variable " + ring_->names()[i] + " not in target ring");
        }
        m.set(*index[i], t.mono[i]);
      }
      out.push_back({t.coeff, std::move(m)});
    }
    return from_terms(target, std::move(out));
  }

  /// Exact division by a nonzero polynomial; nullopt when f does not divide.
  std::optional<Polynomial> divide_exact(const Polynomial& f) const {
    check_ring(*this, f);
    if (f.is_zero()) throw ZeroDivisorQuery("division by zero polynomial");
    Polynomial rest = *this;
    std::vector<Term> quotient;
    auto inv = f.lead_coeff().inverse();
    while (!rest.is_zero()) {
      const auto& lt = rest.lead();
      if (!f.lead_monomial().divides(lt.mono)) return std::nullopt;
      Coeff c = lt.coeff * inv;
      Monomial m = lt.mono / f.lead_monomial();
      quotient.push_back({c, m});
      rest = rest.add_scaled(-c, m, f);
    }
    return from_sorted_terms(ring_, std::move(quotient));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
  }

 private:
  static void check_ring(const Polynomial& a, const Polynomial& b) {
    if (!same_ring(a.ring_, b.ring_)) throw RingMismatch("operands live in different rings");
  }

  void canonicalize() {
    const auto& order = ring_->order();
    std::sort(terms_.begin(), terms_.end(), [&order](const Term& x, const Term& y) {
      return order.greater(x.mono, y.mono);
    });
    std::size_t out = 0;
    for (std::size_t i = 0; i < terms_.size();) {
      Term acc = std::move(terms_[i]);
      std::size_t j = i + 1;
      while (j < terms_.size() && terms_[j].mono == acc.mono) {
        acc.coeff = acc.coeff + terms_[j].coeff;
        ++j;
      }
      if (!acc.coeff.is_zero()) terms_[out++] = std::move(acc);
      i = j;
    }
    terms_.erase(terms_.begin() + static_cast<std::ptrdiff_t>(out), terms_.end());
  }

  // a + c * m * b[skip..]
  static Polynomial merge(const Polynomial& a, const Polynomial& b, const Coeff& c,
                          const Monomial& m, std::size_t skip) {
    Polynomial r(a.ring_);
    if (c.is_zero()) {
      r.terms_ = a.terms_;
      return r;
    }
    const auto& order = a.ring_->order();
    const bool shift = !m.is_one();
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = skip;
    std::optional<Monomial> bm;
    auto bmono = [&]() -> const Monomial& {
      if (!shift) return b.terms_[j].mono;
      if (!bm) bm = b.terms_[j].mono * m;
      return *bm;
    };
    while (i < a.terms_.size() && j < b.terms_.size()) {
      const Monomial& mb = bmono();
      auto cmp = order.compare(a.terms_[i].mono, mb);
      if (cmp > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (cmp < 0) {
        r.terms_.push_back({b.terms_[j].coeff * c, mb});
        ++j;
        bm.reset();
      } else {
        Coeff s = a.terms_[i].coeff + b.terms_[j].coeff * c;
        if (!s.is_zero()) r.terms_.push_back({std::move(s), a.terms_[i].mono});
        ++i;
        ++j;
        bm.reset();
      }
    }
    for (; i < a.terms_.size(); ++i) r.terms_.push_back(a.terms_[i]);
    for (; j < b.terms_.size(); ++j) {
      r.terms_.push_back({b.terms_[j].coeff * c, shift ? b.terms_[j].mono * m : b.terms_[j].mono});
    }
    return r;
  }

  RingPtr<F> ring_;
  std::vector<Term> terms_;
};

template <class T>
T coeff_pow(T base, std::uint64_t n) {
  T result = base / base;
  while (n) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

/// f^(p^e) in characteristic p, computed termwise.
template <CoefficientField F>
Polynomial<F> frobenius_power(const Polynomial<F>& f, unsigned e) {
  const std::uint64_t p = f.field().characteristic();
  if (p == 0) throw WrongCharacteristic("Frobenius power needs characteristic p > 0");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (q > Monomial::kMaxExponent / p) throw ExponentOverflow("p^e too large");
    q *= p;
  }
  if (q == 1) return f;
  std::vector<typename Polynomial<F>::Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    auto c = t.coeff;
    for (unsigned i = 0; i < e; ++i) c = coeff_pow(c, p);
    terms.push_back({c, t.mono.pow(q)});
  }
  // X^a -> X^{qa} is strictly monotone for every order used here.
  return Polynomial<F>::from_sorted_terms(f.ring(), std::move(terms));
}

/// Ring homomorphism K[vars(f)] -> target sending variable i to images[i].
template <CoefficientField F>
Polynomial<F> substitute(const Polynomial<F>& f, std::span<const Polynomial<F>> images) {
  if (images.size() != f.ring()->nvars()) {
    throw ArityMismatch("substitution has " + std::to_string(images.size()) +
                        " images for " + std::to_string(f.ring()->nvars()) + " variables");
  }
  if (images.empty()) throw ArityMismatch("substitution into a ring without variables");
  const auto& target = images[0].ring();
  for (const auto& img : images) {
    if (!same_ring(img.ring(), target)) throw ArityMismatch("images live in different rings");
  }
  // Cache powers of each image since monomials reuse them.
  std::vector<std::map<std::uint32_t, Polynomial<F>>> powers(images.size());
  auto power = [&](std::size_t v, std::uint32_t e) -> const Polynomial<F>& {
    auto it = powers[v].find(e);
    if (it != powers[v].end()) return it->second;
    return powers[v].emplace(e, images[v].pow(e)).first->second;
  };
  Polynomial<F> result(target);
  for (const auto& t : f.terms()) {
    Polynomial<F> term = Polynomial<F>::constant(target, t.coeff);
    for (std::size_t v = 0; v < images.size(); ++v) {
      if (t.mono[v] != 0) term = term * power(v, t.mono[v]);
    }
    result += term;
  }
  return result;
}

/// Name-keyed substitution; unmapped variables go to the same-named
/// variable of `target`.
template <CoefficientField F>
Polynomial<F> substitute(const Polynomial<F>& f,
                         const std::map<std::string, Polynomial<F>>& map,
                         const RingPtr<F>& target) {
  std::vector<Polynomial<F>> images;
  for (const auto& name : f.ring()->names()) {
    auto it = map.find(name);
    if (it != map.end()) {
      images.push_back(it->second.map_to(target));
    } else if (target->index_of(name)) {
      images.push_back(Polynomial<F>::variable(target, name));
    } else {
      throw ArityMismatch("no image for variable " + name);
    }
  }
  return substitute(f, std::span<const Polynomial<F>>(images));
}

}  // namespace paraclose

#endif  // PARACLOSE_POLYNOMIAL_HPP
