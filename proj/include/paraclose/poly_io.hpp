#ifndef PARACLOSE_POLY_IO_HPP
#define PARACLOSE_POLY_IO_HPP

// Text syntax for polynomials, e.g. `3/2*x^2*y - z + 1`.
//
//   expr    := ['+'|'-'] product (('+'|'-') product)*
//   product := power (['*'] power)*
//   power   := atom ['^' integer]
//   atom    := integer ['/' integer] | identifier | '(' expr ')'
//
// The printer emits the expanded canonical form, which the parser reads back.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "paraclose/errors.hpp"
#include "paraclose/polynomial.hpp"

namespace paraclose {

namespace detail {

template <CoefficientField F>
class PolyParser {
 public:
  PolyParser(const RingPtr<F>& ring, std::string_view text) : ring_(ring), text_(text) {}

  Polynomial<F> parse() {
    skip_ws();
    if (pos_ == text_.size()) fail("empty polynomial");
    auto p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, 0, pos_ + 1); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  bool starts_atom() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) ||
           c == '_' || c == '(';
  }

  Polynomial<F> expr() {
    Polynomial<F> acc(ring_);
    bool negate = false;
    if (peek('+')) {
      ++pos_;
    } else if (peek('-')) {
      ++pos_;
      negate = true;
    }
    auto first = product();
    acc = negate ? -first : first;
    while (true) {
      if (peek('+')) {
        ++pos_;
        acc += product();
      } else if (peek('-')) {
        ++pos_;
        acc -= product();
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial<F> product() {
    auto acc = power();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc *= power();
      } else if (starts_atom()) {
        acc *= power();
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial<F> power() {
    auto base = atom();
    if (peek('^')) {
      ++pos_;
      skip_ws();
      auto digits = integer_literal();
      if (digits.empty()) fail("expected exponent after '^'");
      if (digits.size() > 9) fail("exponent too large");
      base = base.pow(std::stoull(digits));
    }
    return base;
  }

  std::string integer_literal() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Polynomial<F> atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto inner = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string lit = integer_literal();
      skip_ws();
      // a '/' directly after an integer is part of a rational literal
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        skip_ws();
        std::string den = integer_literal();
        if (den.empty()) fail("expected denominator after '/'");
        lit += "/" + den;
      }
      auto q = Rational::parse(lit);
      if (!q) fail("bad numeric literal " + lit);
      return Polynomial<F>::constant(ring_, ring_->field().from_rational(*q));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                     text_[pos_] == '_')) {
        ++pos_;
      }
      std::string name(text_.substr(start, pos_ - start));
      auto idx = ring_->index_of(name);
      if (!idx) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return Polynomial<F>::variable(ring_, *idx);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  const RingPtr<F>& ring_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

template <CoefficientField F>
Polynomial<F> parse_polynomial(const RingPtr<F>& ring, std::string_view text) {
  return detail::PolyParser<F>(ring, text).parse();
}

/// Splits a `;`-separated list and parses each entry; empty entries are skipped.
template <CoefficientField F>
std::vector<Polynomial<F>> parse_polynomial_list(const RingPtr<F>& ring, std::string_view text) {
  std::vector<Polynomial<F>> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    auto piece = text.substr(start, end - start);
    bool blank = true;
    for (char c : piece) blank = blank && std::isspace(static_cast<unsigned char>(c));
    if (!blank) {
      try {
        out.push_back(parse_polynomial(ring, piece));
      } catch (const ParseError& e) {
        throw ParseError(e.message(), 0, e.column() + start);
      }
    }
    start = end + 1;
  }
  return out;
}

inline std::string monomial_to_string(const Monomial& m, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += names[i];
    if (m[i] > 1) out += '^' + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

namespace detail {
inline bool coeff_is_negative(const Rational& c) { return c.sign() < 0; }
template <class T>
bool coeff_is_negative(const T&) {
  return false;
}
}  // namespace detail

template <CoefficientField F>
std::string to_string(const Polynomial<F>& f) {
  if (f.is_zero()) return "0";
  const auto& names = f.ring()->names();
  const auto one = f.field().one();
  std::string out;
  bool first = true;
  for (const auto& t : f.terms()) {
    auto c = t.coeff;
    bool negative = detail::coeff_is_negative(c);
    if (negative) c = -c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (t.mono.is_one()) {
      out += c.to_string();
    } else if (c == one) {
      out += monomial_to_string(t.mono, names);
    } else {
      out += c.to_string() + "*" + monomial_to_string(t.mono, names);
    }
  }
  return out;
}

template <CoefficientField F>
std::vector<std::string> to_strings(const std::vector<Polynomial<F>>& polys) {
  std::vector<std::string> out;
  out.reserve(polys.size());
  for (const auto& p : polys) out.push_back(to_string(p));
  return out;
}

}  // namespace paraclose

#endif  // PARACLOSE_POLY_IO_HPP
