#ifndef PARACLOSE_MONOMIAL_CLOSURE_HPP
#define PARACLOSE_MONOMIAL_CLOSURE_HPP

// Integral closure of monomial ideals via the Newton polyhedron:
// X^a is integral over I^s iff a lies in s * conv(exponents of I) + orthant.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "paraclose/closure.hpp"
#include "paraclose/errors.hpp"
#include "paraclose/field.hpp"
#include "paraclose/monomial.hpp"
#include "paraclose/poly_io.hpp"

namespace paraclose {

/// Minimal monomial generators; no generator divides another.
class MonomialIdeal {
 public:
  MonomialIdeal(std::size_t nvars, std::vector<Monomial> gens) : nvars_(nvars) {
    for (auto& g : gens) {
      if (g.size() != nvars) throw ArityMismatch("monomial generator arity");
    }
    std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) {
      if (a.degree() != b.degree()) return a.degree() < b.degree();
      return std::lexicographical_compare(a.exponents().begin(), a.exponents().end(), b.exponents().begin(),
                                          b.exponents().end());
    });
    for (auto& g : gens) {
      bool redundant = false;
      for (const auto& kept : gens_) redundant = redundant || kept.divides(g);
      if (!redundant) gens_.push_back(std::move(g));
    }
  }

  /// Monomial generators of a polynomial ideal; anything else is rejected.
  template <CoefficientField F>
  static MonomialIdeal from_polynomials(const std::vector<Polynomial<F>>& polys, std::size_t nvars) {
    std::vector<Monomial> gens;
    for (const auto& p : polys) {
      if (p.size() != 1) throw ArityMismatch("not a monomial: generator has " + std::to_string(p.size()) + " terms");
      gens.push_back(p.lead_monomial());
    }
    return MonomialIdeal(nvars, std::move(gens));
  }

  std::size_t nvars() const noexcept { return nvars_; }
  const std::vector<Monomial>& generators() const noexcept { return gens_; }
  bool empty() const noexcept { return gens_.empty(); }

  bool contains(const Monomial& m) const {
    for (const auto& g : gens_) {
      if (g.divides(m)) return true;
    }
    return false;
  }

  MonomialIdeal power(unsigned n) const {
    std::vector<Monomial> acc{Monomial(nvars_)};
    for (unsigned i = 0; i < n; ++i) {
      std::vector<Monomial> next;
      for (const auto& a : acc) {
        for (const auto& g : gens_) next.push_back(a * g);
      }
      acc = MonomialIdeal(nvars_, std::move(next)).gens_;
    }
    return MonomialIdeal(nvars_, std::move(acc));
  }

  template <CoefficientField F>
  std::vector<Polynomial<F>> polynomials(const RingPtr<F>& ring) const {
    std::vector<Polynomial<F>> out;
    for (const auto& g : gens_) out.push_back(Polynomial<F>::monomial(ring, g));
    return out;
  }

 private:
  std::size_t nvars_;
  std::vector<Monomial> gens_;
};

namespace detail {

// Rows sum_j coeffs[j] * lambda_j <= bound.
struct Inequality {
  std::vector<Rational> coeffs;
  Rational bound;
};

inline std::vector<Inequality> newton_system(const MonomialIdeal& ideal, const Monomial& a, unsigned s) {
  const std::size_t n = ideal.generators().size();
  std::vector<Inequality> rows;
  for (std::size_t j = 0; j < n; ++j) {
    Inequality nonneg{std::vector<Rational>(n, Rational(0)), Rational(0)};
    nonneg.coeffs[j] = Rational(-1);
    rows.push_back(std::move(nonneg));
  }
  rows.push_back({std::vector<Rational>(n, Rational(1)), Rational(static_cast<long>(s))});
  rows.push_back({std::vector<Rational>(n, Rational(-1)), Rational(-static_cast<long>(s))});
  for (std::size_t k = 0; k < ideal.nvars(); ++k) {
    Inequality row{{}, Rational(static_cast<long>(a[k]))};
    for (const auto& g : ideal.generators()) row.coeffs.push_back(Rational(static_cast<long>(g[k])));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

/// Feasibility of {lambda >= 0, sum lambda = s, sum lambda_g v_g <= a} by
/// Fourier-Motzkin elimination, exact over Q.
inline bool newton_feasible_fm(const MonomialIdeal& ideal, const Monomial& a, unsigned s) {
  auto rows = detail::newton_system(ideal, a, s);
  const std::size_t n = ideal.generators().size();
  for (std::size_t var = 0; var < n; ++var) {
    std::vector<detail::Inequality> pos, neg, next;
    for (auto& r : rows) {
      int sg = r.coeffs[var].sign();
      if (sg > 0) {
        pos.push_back(std::move(r));
      } else if (sg < 0) {
        neg.push_back(std::move(r));
      } else {
        next.push_back(std::move(r));
      }
    }
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        // scale so the coefficients of var cancel: p / p_var + q / (-q_var)
        Rational sp = p.coeffs[var].inverse();
        Rational sq = (-q.coeffs[var]).inverse();
        detail::Inequality comb{std::vector<Rational>(n, Rational(0)), p.bound * sp + q.bound * sq};
        for (std::size_t j = 0; j < n; ++j) comb.coeffs[j] = p.coeffs[j] * sp + q.coeffs[j] * sq;
        comb.coeffs[var] = Rational(0);
        next.push_back(std::move(comb));
      }
    }
    rows = std::move(next);
  }
  for (const auto& r : rows) {
    if (r.bound.sign() < 0) return false;
  }
  return true;
}

/// Same feasibility question by a phase-one simplex with Bland's rule.
inline bool newton_feasible_simplex(const MonomialIdeal& ideal, const Monomial& a, unsigned s) {
  // Equality form: sum_g v_{g,k} lambda_g + slack_k = a_k; sum lambda_g = s.
  // All right-hand sides are >= 0, so one artificial per row starts a basis.
  const std::size_t n = ideal.generators().size();
  const std::size_t m = ideal.nvars() + 1;
  const std::size_t slack0 = n, art0 = n + ideal.nvars(), cols = art0 + m;
  std::vector<std::vector<Rational>> tab(m, std::vector<Rational>(cols + 1, Rational(0)));
  for (std::size_t k = 0; k < ideal.nvars(); ++k) {
    for (std::size_t j = 0; j < n; ++j) tab[k][j] = Rational(static_cast<long>(ideal.generators()[j][k]));
    tab[k][slack0 + k] = Rational(1);
    tab[k][cols] = Rational(static_cast<long>(a[k]));
  }
  for (std::size_t j = 0; j < n; ++j) tab[m - 1][j] = Rational(1);
  tab[m - 1][cols] = Rational(static_cast<long>(s));
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) {
    tab[r][art0 + r] = Rational(1);
    basis[r] = art0 + r;
  }
  // reduced costs of "minimize sum of artificials"
  std::vector<Rational> cost(cols + 1, Rational(0));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c <= cols; ++c) {
      if (c < art0 || c == cols) cost[c] = cost[c] - tab[r][c];
    }
  }
  while (true) {
    std::size_t enter = cols;
    for (std::size_t c = 0; c < cols; ++c) {
      if (cost[c].sign() < 0) {
        enter = c;
        break;
      }
    }
    if (enter == cols) break;
    std::size_t leave = m;
    Rational best(0);
    for (std::size_t r = 0; r < m; ++r) {
      if (tab[r][enter].sign() <= 0) continue;
      Rational ratio = tab[r][cols] / tab[r][enter];
      if (leave == m || ratio < best || (ratio == best && basis[r] < basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave == m) throw InternalError("phase-one simplex is unbounded");
    Rational inv = tab[leave][enter].inverse();
    for (auto& v : tab[leave]) v = v * inv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == leave || tab[r][enter].is_zero()) continue;
      Rational f = tab[r][enter];
      for (std::size_t c = 0; c <= cols; ++c) tab[r][c] = tab[r][c] - f * tab[leave][c];
    }
    Rational f = cost[enter];
    for (std::size_t c = 0; c <= cols; ++c) cost[c] = cost[c] - f * tab[leave][c];
    basis[leave] = enter;
  }
  // the objective value is -cost[cols]
  return cost[cols].is_zero();
}

/// X^a in the integral closure of I^s.
inline bool monomial_integral_closure_member(const MonomialIdeal& ideal, const Monomial& a, unsigned s) {
  if (ideal.empty()) throw EmptyData("monomial ideal has no generators");
  if (a.size() != ideal.nvars()) throw ArityMismatch("monomial arity");
  if (ideal.generators().size() <= 4) return newton_feasible_fm(ideal, a, s);
  return newton_feasible_simplex(ideal, a, s);
}

/// All monomials of degree <= bound integral over I^s, by degree then exponent vector.
inline std::vector<Monomial> integral_closure_monomials(const MonomialIdeal& ideal, unsigned s, unsigned bound) {
  Monomial top(ideal.nvars());
  for (std::size_t i = 0; i < ideal.nvars(); ++i) top.set(i, bound);
  std::vector<Monomial> out;
  for (const auto& m : detail::box_monomials(top)) {
    if (m.degree() <= bound && monomial_integral_closure_member(ideal, m, s)) out.push_back(m);
  }
  std::stable_sort(out.begin(), out.end(), [](const Monomial& x, const Monomial& y) { return x.degree() < y.degree(); });
  return out;
}

struct BrianconSkodaReport {
  std::vector<std::string> ideal;
  unsigned n = 0;
  unsigned w = 0;
  std::uint64_t p = 0;
  unsigned degree_bound = 0;
  unsigned e_max = 0;
  std::vector<std::string> violations;
  std::size_t checked = 0;

  bool pass() const noexcept { return violations.empty(); }
};

/// Every monomial of degree <= bound in the closure of I^{n+w} is tested in
/// the tight closure of I^{w+1} with multiplier 1.
template <CoefficientField F>
BrianconSkodaReport briancon_skoda_check(const RingPtr<F>& ring, const MonomialIdeal& ideal, unsigned n_gens,
                                         unsigned w, unsigned degree_bound, unsigned e_max) {
  if (ideal.nvars() != ring->nvars()) throw ArityMismatch("monomial ideal and ring differ in variable count");
  frobenius_q(ring->field(), e_max);
  BrianconSkodaReport report;
  for (const auto& g : ideal.generators()) report.ideal.push_back(monomial_to_string(g, ring->names()));
  report.n = n_gens;
  report.w = w;
  report.p = ring->field().characteristic();
  report.degree_bound = degree_bound;
  report.e_max = e_max;

  RingPresentation<F> base(ring);
  Ideal<F> target(ring, ideal.power(w + 1).template polynomials<F>(ring));
  FrobeniusSweep<F> sweep(base, target, e_max);
  auto one = Polynomial<F>::constant(ring, 1);
  for (const auto& m : integral_closure_monomials(ideal, n_gens + w, degree_bound)) {
    ++report.checked;
    auto v = detail::sweep_with(sweep, one, Polynomial<F>::monomial(ring, m));
    if (!std::holds_alternative<InClosureUpToBound<F>>(v.status)) {
      report.violations.push_back(monomial_to_string(m, ring->names()));
    }
  }
  return report;
}

}  // namespace paraclose

#endif  // PARACLOSE_MONOMIAL_CLOSURE_HPP
