#ifndef PARACLOSE_PROBLEM_FILE_HPP
#define PARACLOSE_PROBLEM_FILE_HPP

// Problem files: UTF-8 text, one `key: value` per line, `#` starts a comment,
// polynomial lists are `;`-separated.
//
//   field: Fp:5
//   vars: x, y, z
//   f: x^3; y^3; z^3
//   h: x^2*y^2*z^2

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "paraclose/errors.hpp"
#include "paraclose/poly_io.hpp"

namespace paraclose {

struct ProblemEntry {
  std::string value;
  std::size_t line = 0;
  std::size_t column = 0;  // 1-based column where the value starts
};

class ProblemFile {
 public:
  static inline const std::vector<std::string> kKeys = {
      "field", "vars",   "order", "relations", "f",      "h",     "params", "u",   "search_degree",
      "k_max", "e_max",  "degree_bound", "n",   "w",      "lhs",   "rhs",    "ideal"};

  static ProblemFile parse(std::string_view text) {
    ProblemFile pf;
    std::size_t line_no = 0, pos = 0;
    while (pos <= text.size()) {
      auto end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(pos, end - pos);
      ++line_no;
      pos = end + 1;
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (is_blank(line)) continue;
      auto colon = line.find(':');
      if (colon == std::string_view::npos) throw ParseError("expected `key: value`", line_no, 1);
      std::string key = trim(line.substr(0, colon));
      bool known = false;
      for (const auto& k : kKeys) known = known || k == key;
      if (!known) throw ParseError("unknown key '" + key + "'", line_no, 1);
      if (pf.entries_.count(key)) throw ParseError("duplicate key '" + key + "'", line_no, 1);
      std::size_t vstart = colon + 1;
      while (vstart < line.size() && std::isspace(static_cast<unsigned char>(line[vstart]))) ++vstart;
      pf.entries_[key] = {trim(line.substr(vstart)), line_no, vstart + 1};
    }
    if (!pf.has("vars")) throw ParseError("missing key 'vars'", line_no == 0 ? 1 : line_no, 1);
    return pf;
  }

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  const ProblemEntry& entry(const std::string& key) const { return entries_.at(key); }
  std::string value_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? entries_.at(key).value : fallback;
  }
  void set(const std::string& key, const std::string& value) {
    auto it = entries_.find(key);
    if (it == entries_.end()) {
      entries_[key] = {value, 0, 0};
    } else {
      it->second.value = value;
    }
  }
  const std::map<std::string, ProblemEntry>& entries() const noexcept { return entries_; }

  std::optional<unsigned> number(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    const auto& e = entries_.at(key);
    if (e.value.empty() || e.value.size() > 9) throw ParseError("expected a small non-negative integer", e.line, e.column);
    for (char c : e.value) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw ParseError("expected a non-negative integer", e.line, e.column);
      }
    }
    return static_cast<unsigned>(std::stoul(e.value));
  }

  /// Variable names, separated by commas or whitespace.
  std::vector<std::string> variables() const {
    const auto& e = entries_.at("vars");
    std::vector<std::string> out;
    std::string cur;
    for (char c : e.value + ",") {
      if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
        if (!cur.empty()) out.push_back(cur);
        cur.clear();
        continue;
      }
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) {
        throw ParseError(std::string("bad character '") + c + "' in variable list", e.line, e.column);
      }
      cur += c;
    }
    if (out.empty()) throw ParseError("no variables declared", e.line, e.column);
    return out;
  }

  MonomialOrder order() const {
    auto o = value_or("order", "grevlex");
    if (o == "grevlex") return MonomialOrder::grevlex();
    if (o == "lex") return MonomialOrder::lex();
    const auto& e = entries_.at("order");
    throw ParseError("unknown order '" + o + "'", e.line, e.column);
  }

  /// Polynomials of a `;` list; parse errors carry this file's line and column.
  template <CoefficientField F>
  std::vector<Polynomial<F>> polynomials(const RingPtr<F>& ring, const std::string& key) const {
    if (!has(key)) return {};
    const auto& e = entries_.at(key);
    try {
      return parse_polynomial_list(ring, e.value);
    } catch (const ParseError& err) {
      throw ParseError(key + ": " + err.message(), e.line, e.column + err.column() - 1);
    }
  }

  template <CoefficientField F>
  std::optional<Polynomial<F>> polynomial(const RingPtr<F>& ring, const std::string& key) const {
    if (!has(key)) return std::nullopt;
    auto list = polynomials(ring, key);
    const auto& e = entries_.at(key);
    if (list.size() != 1) throw ParseError(key + ": expected exactly one polynomial", e.line, e.column);
    return list.front();
  }

  std::string to_text() const {
    std::string out;
    for (const auto& k : kKeys) {
      if (has(k)) out += k + ": " + entries_.at(k).value + "\n";
    }
    return out;
  }

 private:
  static bool is_blank(std::string_view s) {
    for (char c : s) {
      if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
  }
  static std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
  }

  std::map<std::string, ProblemEntry> entries_;
};

// --- presets -----------------------------------------------------------------

namespace detail {

inline std::vector<unsigned> preset_args(const std::string& spec, std::string& name) {
  std::string norm = spec;
  for (auto& c : norm) {
    if (c == ':' || c == ',') c = ' ';
  }
  std::istringstream in(norm);
  in >> name;
  std::vector<unsigned> args;
  std::string tok;
  while (in >> tok) {
    // accept both `2` and `n=2`
    if (auto eq = tok.find('='); eq != std::string::npos) tok = tok.substr(eq + 1);
    if (tok.empty() || tok.size() > 6 || tok.find_first_not_of("0123456789") != std::string::npos) {
      throw ParseError("bad preset argument '" + tok + "'", 0, 0);
    }
    args.push_back(static_cast<unsigned>(std::stoul(tok)));
  }
  return args;
}

inline std::string pw(const std::string& base, unsigned e) {
  if (e == 0) return "1";
  if (e == 1) return base;
  return base + "^" + std::to_string(e);
}

}  // namespace detail

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"roberts", "toric", "fermat-quadric", "bs-monomial"};
  return names;
}

/// Problem text for a named preset:
///   roberts [p]              X^3, Y^3, Z^3 and X^2 Y^2 Z^2 (over Q, or F_p)
///   toric n k                R = Q[x,y,z]/(xy - z^n), forcing z^{n-1}(xy)^k = T1 x^{k+1} + T2 y^{k+1}
///   fermat-quadric i j k [p] R = K[x,y,z]/(x^i + y^j - z^k), f = (x, y), h = -z
///   bs-monomial [a] [w] [p]  I = (x^a, y^a) over F_p, defaults a = 2, w = 0, p = 5
inline std::string preset_text(const std::string& spec) {
  using detail::pw;
  std::string name;
  auto args = detail::preset_args(spec, name);
  auto arg = [&](std::size_t i, unsigned fallback) { return i < args.size() ? args[i] : fallback; };
  auto field = [&](std::size_t i) {
    return i < args.size() ? "Fp:" + std::to_string(args[i]) : std::string("Q");
  };
  std::string out;
  if (name == "roberts") {
    out += "field: " + field(0) + "\n";
    out += "vars: X, Y, Z\n";
    out += "f: X^3; Y^3; Z^3\nh: X^2*Y^2*Z^2\nparams: X; Y; Z\nu: 1\nk_max: 3\ne_max: 2\n";
    return out;
  }
  if (name == "toric") {
    unsigned n = arg(0, 2), k = arg(1, 0);
    if (n == 0) throw ParseError("toric needs n >= 1", 0, 0);
    out += "field: Q\nvars: x, y, z\n";
    out += "relations: x*y - " + pw("z", n) + "\n";
    out += "f: " + pw("x", k + 1) + "; " + pw("y", k + 1) + "\n";
    std::string h = pw("z", n - 1);
    if (k > 0) h = (n > 1 ? h + "*" : std::string()) + pw("(x*y)", k);
    out += "h: -" + h + "\n";
    out += "params: x; y\nk_max: 6\n";
    out += "lhs: x*" + pw("(T1*" + pw("x", k + 1) + ")", n) + "\n";
    out += "rhs: " + pw("y", n * (k + 1) - 1) + "*" + pw("(" + pw("x", k + 1) + " - T2*z)", n) + "\n";
    return out;
  }
  if (name == "fermat-quadric") {
    unsigned i = arg(0, 2), j = arg(1, 2), k = arg(2, 3);
    if (i == 0 || j == 0 || k == 0) throw ParseError("fermat-quadric exponents must be positive", 0, 0);
    out += "field: " + field(3) + "\nvars: x, y, z\n";
    out += "relations: " + pw("x", i) + " + " + pw("y", j) + " - " + pw("z", k) + "\n";
    out += "f: x; y\nh: -z\nparams: x; y\nk_max: 6\n";
    out += "lhs: " + pw("x", i) + "\nrhs: 0\nideal: y; " + pw("x", i + 1) + "\n";
    return out;
  }
  if (name == "bs-monomial") {
    unsigned a = arg(0, 2), w = arg(1, 0), p = arg(2, 5);
    out += "field: Fp:" + std::to_string(p) + "\nvars: x, y\n";
    out += "f: " + pw("x", a) + "; " + pw("y", a) + "\n";
    out += "n: 2\nw: " + std::to_string(w) + "\ndegree_bound: 8\ne_max: 1\n";
    return out;
  }
  throw ParseError("unknown preset '" + name + "'", 0, 0);
}

}  // namespace paraclose

#endif  // PARACLOSE_PROBLEM_FILE_HPP
