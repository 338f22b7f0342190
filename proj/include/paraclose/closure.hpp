#ifndef PARACLOSE_CLOSURE_HPP
#define PARACLOSE_CLOSURE_HPP

// Closure computations over a polynomial ring K[X_1..X_d]:
// the constructive vanishing certificate for h not in I, Frobenius-power
// tight-closure tests in characteristic p, and reduction mod p.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "paraclose/errors.hpp"
#include "paraclose/forcing.hpp"
#include "paraclose/groebner.hpp"
#include "paraclose/linear_solve.hpp"
#include "paraclose/polynomial.hpp"

namespace paraclose {

// --- regular certificate -----------------------------------------------------

/// phi(X^sigma) = c_sigma on the box sigma <= r; zero outside.
template <CoefficientField F>
struct SeparatingFunctional {
  using Coeff = typename F::value_type;
  Monomial r;
  std::vector<std::pair<Monomial, Coeff>> coefficients;  // nonzero c_sigma only

  Coeff operator()(const Polynomial<F>& p) const {
    Coeff acc = p.field().zero();
    for (const auto& [mono, c] : coefficients) acc = acc + c * p.coefficient(mono);
    return acc;
  }
};

template <CoefficientField F>
struct HIsMember {
  MembershipCertificate<F> certificate;
};

template <CoefficientField F>
struct RegularCertificate {
  SeparatingFunctional<F> functional;
  Polynomial<F> multiplier;  // sum_sigma c_{r - sigma} X^sigma, in K[X]
  ForcingPresentation<F> presentation;
  ParameterSystem<F> params;  // the variables X_1..X_d
  AnisotropicWitness<F> witness;
  VanishingCertificate<F> certificate;
  // I has a generator with a nonzero constant term, so membership in the
  // localization at the origin may differ from polynomial membership.
  bool local_membership_may_differ = false;
};

template <CoefficientField F>
using RegularResult = std::variant<RegularCertificate<F>, HIsMember<F>>;

namespace detail {

inline std::vector<Monomial> box_monomials(const Monomial& r) {
  std::vector<Monomial> out;
  Monomial cur(r.size());
  while (true) {
    out.push_back(cur);
    std::size_t i = 0;
    while (i < r.size() && cur[i] == r[i]) {
      cur.set(i, 0);
      ++i;
    }
    if (i == r.size()) break;
    cur.set(i, cur[i] + 1);
  }
  return out;
}

template <CoefficientField F>
std::vector<Polynomial<F>> with_box(const std::vector<Polynomial<F>>& gens, const RingPtr<F>& ring,
                                    const std::vector<std::uint64_t>& exps) {
  std::vector<Polynomial<F>> out = gens;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    out.push_back(Polynomial<F>::monomial(ring, Monomial::unit(ring->nvars(), i, static_cast<std::uint32_t>(exps[i]))));
  }
  return out;
}

template <CoefficientField F>
bool member_of(const std::vector<Polynomial<F>>& gens, const RingPtr<F>& ring, const Polynomial<F>& h) {
  GroebnerOptions opts;
  opts.track_cofactors = false;
  return contains(buchberger<F>(std::span<const Polynomial<F>>(gens), ring, opts), h);
}

}  // namespace detail

/// True iff phi kills X^sigma f_j and X^sigma h (sigma > 0) on the box and phi(h) = 1.
template <CoefficientField F>
bool functional_separates(const SeparatingFunctional<F>& phi, const std::vector<Polynomial<F>>& gens,
                          const Polynomial<F>& h) {
  const auto& ring = h.ring();
  for (const auto& sigma : detail::box_monomials(phi.r)) {
    auto shift = Polynomial<F>::monomial(ring, sigma);
    for (const auto& f : gens) {
      if (!phi(shift * f).is_zero()) return false;
    }
    auto value = phi(shift * h);
    if (sigma.is_one() ? !(value == ring->field().one()) : !value.is_zero()) return false;
  }
  return true;
}

/// Builds the linear form separating h from I near the origin and the
/// resulting paraclass certificate in the forcing algebra of (I; h).
template <CoefficientField F>
RegularResult<F> regular_certificate(const Ideal<F>& ideal, const Polynomial<F>& h) {
  const auto& ring = ideal.ring();
  if (!same_ring(ring, h.ring())) throw RingMismatch("h outside the ring of I");
  const std::size_t d = ring->nvars();
  const auto& gens = ideal.generators();

  auto membership = membership_with_certificate(h, ideal);
  if (auto* cert = std::get_if<MembershipCertificate<F>>(&membership)) return HIsMember<F>{*cert};

  bool caveat = false;
  std::uint64_t maxdeg = 0;
  for (const auto& f : gens) {
    maxdeg = std::max(maxdeg, f.total_degree());
    if (!f.coefficient(Monomial(d)).is_zero()) caveat = true;
  }
  const std::uint64_t cap = 2 * (1 + maxdeg + h.total_degree());

  // (a) smallest m with h outside (I, X^m)
  std::uint64_t m = 1;
  while (detail::member_of(detail::with_box(gens, ring, std::vector<std::uint64_t>(d, m)), ring, h)) {
    if (++m > cap) {
      throw SearchCapExceeded("h lies in (I, X^m) for every m <= " + std::to_string(cap) +
                              (caveat ? "; I is not contained in (X), so h may lie in I locally" : ""));
    }
  }

  // (b) coordinate descent on r, lower indices first, until nothing moves
  std::vector<std::uint64_t> r(d, m - 1);
  for (bool moved = true; moved;) {
    moved = false;
    for (std::size_t i = 0; i < d; ++i) {
      while (r[i] > 0) {
        auto trial = r;
        trial[i] -= 1;
        std::vector<std::uint64_t> exps(d);
        for (std::size_t j = 0; j < d; ++j) exps[j] = trial[j] + 1;
        if (detail::member_of(detail::with_box(gens, ring, exps), ring, h)) break;
        r = trial;
        moved = true;
      }
    }
  }
  Monomial rbox(d);
  for (std::size_t i = 0; i < d; ++i) rbox.set(i, r[i]);

  // (c, d) truncate and solve for c_mu, mu <= r
  auto box = detail::box_monomials(rbox);
  std::map<std::vector<std::uint32_t>, std::size_t> index;
  for (std::size_t k = 0; k < box.size(); ++k) {
    index[{box[k].exponents().begin(), box[k].exponents().end()}] = k;
  }
  const auto& field = ring->field();
  LinearSystem<F> sys;
  sys.unknowns = box.size();
  // row for phi(X^sigma * g), g truncated to the box
  auto add_row = [&](const Polynomial<F>& g, const Monomial& sigma, bool normalizing) {
    std::vector<typename F::value_type> row(box.size(), field.zero());
    bool any = false;
    auto truncated = g.truncated(rbox);
    for (const auto& t : truncated.terms()) {
      auto mu = t.mono * sigma;
      if (!mu.bounded_by(rbox)) continue;
      row[index.at({mu.exponents().begin(), mu.exponents().end()})] = t.coeff;
      any = true;
    }
    if (!any && !normalizing) return;
    sys.rows.push_back(std::move(row));
    sys.rhs.push_back(normalizing ? field.one() : field.zero());
  };
  for (const auto& sigma : box) {
    for (const auto& f : gens) add_row(f, sigma, false);
    add_row(h, sigma, sigma.is_one());
  }
  auto solution = solve_linear_system(field, std::move(sys));
  if (!solution) throw InternalError("separating linear system is inconsistent although h is not in (I, X^{r+1})");

  SeparatingFunctional<F> phi{rbox, {}};
  std::vector<typename Polynomial<F>::Term> mterms;
  for (std::size_t k = 0; k < box.size(); ++k) {
    const auto& c = (*solution)[k];
    if (c.is_zero()) continue;
    phi.coefficients.emplace_back(box[k], c);
    mterms.push_back({c, rbox / box[k]});
  }
  if (!functional_separates(phi, gens, h)) throw InternalError("separating functional fails its defining equations");
  auto multiplier = Polynomial<F>::from_terms(ring, std::move(mterms));

  // (e) M * (sum f_j T_j + h) = X^r + R with R in (X^{r+1}); split R by first divisible X_i^{r_i+1}
  std::vector<Polynomial<F>> data = gens;
  auto presentation = forcing_presentation(RingPresentation<F>(ring), std::move(data), h);
  const auto& S = presentation.ring();
  auto M = presentation.lift(multiplier);
  Monomial xr(S->nvars());
  for (std::size_t i = 0; i < d; ++i) xr.set(i, r[i]);
  auto rest = M * presentation.forcing_relation() - Polynomial<F>::monomial(S, xr);
  std::vector<std::vector<typename Polynomial<F>::Term>> parts(d);
  for (const auto& t : rest.terms()) {
    std::size_t i = 0;
    while (i < d && t.mono[i] <= r[i]) ++i;
    if (i == d) throw InternalError("multiplier identity leaves a term inside the box");
    parts[i].push_back({-t.coeff, t.mono / Monomial::unit(S->nvars(), i, static_cast<std::uint32_t>(r[i] + 1))});
  }
  AnisotropicWitness<F> witness;
  for (std::size_t i = 0; i < d; ++i) {
    witness.r.push_back(static_cast<unsigned>(r[i]));
    witness.G.push_back(Polynomial<F>::from_terms(S, std::move(parts[i])));
  }
  witness.H.push_back(M);

  ParameterSystem<F> params;
  for (std::size_t i = 0; i < d; ++i) params.params.push_back(Polynomial<F>::variable(ring, i));
  auto certificate = normalize_certificate(presentation, params, witness);
  return RegularCertificate<F>{std::move(phi), std::move(multiplier), std::move(presentation), std::move(params),
                               std::move(witness), std::move(certificate), caveat};
}

// --- Frobenius powers and tight closure --------------------------------------

template <CoefficientField F>
std::uint64_t frobenius_q(const F& field, unsigned e) {
  const std::uint64_t p = field.characteristic();
  if (p == 0) throw WrongCharacteristic("Frobenius powers need characteristic p");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (q > Monomial::kMaxExponent / p) throw ExponentOverflow("p^e too large");
    q *= p;
  }
  return q;
}

/// I^{[q]} = (f_1^q, ..., f_n^q), q = p^e.
template <CoefficientField F>
Ideal<F> frobenius_ideal(const Ideal<F>& ideal, unsigned e) {
  frobenius_q(ideal.ring()->field(), e);
  std::vector<Polynomial<F>> gens;
  for (const auto& f : ideal.generators()) gens.push_back(frobenius_power(f, e));
  return Ideal<F>(ideal.ring(), std::move(gens));
}

struct SearchUpToDegree {
  unsigned degree = 0;
};

template <CoefficientField F>
struct NotInClosure {
  unsigned e = 0;
  Polynomial<F> normal_form;  // of u h^q modulo I^{[q]} + J, nonzero
};

template <CoefficientField F>
struct InClosureUpToBound {
  unsigned e_max = 0;
  Polynomial<F> multiplier;
};

/// SearchUpToDegree exhausted its candidates.
struct NoMultiplierFound {
  unsigned degree = 0;
  unsigned e_max = 0;
  std::size_t candidates = 0;
};

template <CoefficientField F>
struct ClosureVerdict {
  std::variant<NotInClosure<F>, InClosureUpToBound<F>, NoMultiplierFound> status;
  std::vector<bool> passes;  // u h^{p^e} in I^{[p^e]} + J for e = 0..e_max (chosen u)
  std::vector<std::string> notes;
};

/// One Groebner basis of I^{[p^e]} + J per e, reused across multipliers.
template <CoefficientField F>
class FrobeniusSweep {
 public:
  FrobeniusSweep(const RingPresentation<F>& base, const Ideal<F>& ideal, unsigned e_max)
      : base_(base), ideal_(ideal), e_max_(e_max) {
    if (!same_ring(ideal.ring(), base.ring)) throw RingMismatch("ideal outside the base ring");
    GroebnerOptions opts;
    opts.track_cofactors = false;
    for (unsigned e = 0; e <= e_max; ++e) {
      auto gens = frobenius_ideal(ideal, e).generators();
      gens.insert(gens.end(), base.relations.begin(), base.relations.end());
      bases_.push_back(buchberger<F>(std::span<const Polynomial<F>>(gens), base.ring, opts));
    }
    auto rel = base.relations;
    relations_ = buchberger<F>(std::span<const Polynomial<F>>(rel), base.ring, opts);
  }

  unsigned e_max() const noexcept { return e_max_; }
  const GroebnerBasis<F>& basis(unsigned e) const { return bases_.at(e); }

  bool zero_in_base(const Polynomial<F>& u) const { return normal_form(u, relations_).is_zero(); }

  /// Normal form of u h^{p^e} modulo I^{[p^e]} + J.
  Polynomial<F> residue(const Polynomial<F>& u, const Polynomial<F>& h, unsigned e) const {
    return normal_form(u * frobenius_power(h, e), bases_.at(e));
  }

 private:
  RingPresentation<F> base_;
  Ideal<F> ideal_;
  unsigned e_max_;
  std::vector<GroebnerBasis<F>> bases_;
  GroebnerBasis<F> relations_;
};

namespace detail {

template <CoefficientField F>
ClosureVerdict<F> sweep_with(const FrobeniusSweep<F>& sweep, const Polynomial<F>& u, const Polynomial<F>& h) {
  ClosureVerdict<F> v{InClosureUpToBound<F>{sweep.e_max(), u}, {}, {}};
  std::optional<NotInClosure<F>> first_any, first_positive;
  for (unsigned e = 0; e <= sweep.e_max(); ++e) {
    auto nf = sweep.residue(u, h, e);
    v.passes.push_back(nf.is_zero());
    if (nf.is_zero()) continue;
    if (!first_any) first_any = NotInClosure<F>{e, nf};
    if (e > 0 && !first_positive) first_positive = NotInClosure<F>{e, nf};
  }
  // the witness is the first failing Frobenius power e >= 1 when there is one
  if (first_positive) {
    v.status = *first_positive;
  } else if (first_any) {
    v.status = *first_any;
  }
  return v;
}

template <CoefficientField F>
std::vector<Polynomial<F>> multiplier_candidates(const RingPtr<F>& ring, unsigned degree) {
  std::vector<Monomial> monos;
  for (unsigned d = 0; d <= degree; ++d) {
    Monomial top(ring->nvars());
    for (std::size_t i = 0; i < ring->nvars(); ++i) top.set(i, d);
    std::vector<Monomial> layer;
    for (const auto& m : box_monomials(top)) {
      if (m.degree() == d) layer.push_back(m);
    }
    std::sort(layer.begin(), layer.end(),
              [&](const Monomial& a, const Monomial& b) { return ring->order().greater(a, b); });
    monos.insert(monos.end(), layer.begin(), layer.end());
  }
  std::vector<Polynomial<F>> out;
  for (const auto& m : monos) out.push_back(Polynomial<F>::monomial(ring, m));
  const auto& field = ring->field();
  std::vector<typename F::value_type> scalars{field.one()};
  if (!(-field.one() == field.one())) scalars.push_back(-field.one());
  for (std::size_t i = 0; i < monos.size(); ++i) {
    for (std::size_t j = i + 1; j < monos.size(); ++j) {
      for (const auto& c : scalars) {
        out.push_back(Polynomial<F>::monomial(ring, monos[i]) + Polynomial<F>::term(ring, c, monos[j]));
      }
    }
  }
  return out;
}

}  // namespace detail

/// Tests u h^{p^e} in (f_1^{p^e}, ..., f_n^{p^e}) + J for e = 0..e_max with a given multiplier.
template <CoefficientField F>
ClosureVerdict<F> tight_closure_test(const RingPresentation<F>& base, const Ideal<F>& ideal, const Polynomial<F>& h,
                                     const Polynomial<F>& u, unsigned e_max) {
  frobenius_q(base.ring->field(), e_max);
  FrobeniusSweep<F> sweep(base, ideal, e_max);
  if (u.is_zero() || sweep.zero_in_base(u)) throw ZeroMultiplier("multiplier is zero in the base ring");
  auto v = detail::sweep_with(sweep, u, h);
  v.notes.push_back("refutation assumes the multiplier is a test element");
  return v;
}

/// Searches monomials, then sums of two monomials with unit coefficients, of degree <= D.
template <CoefficientField F>
ClosureVerdict<F> tight_closure_test(const RingPresentation<F>& base, const Ideal<F>& ideal, const Polynomial<F>& h,
                                     SearchUpToDegree search, unsigned e_max) {
  frobenius_q(base.ring->field(), e_max);
  FrobeniusSweep<F> sweep(base, ideal, e_max);
  auto candidates = detail::multiplier_candidates(base.ring, search.degree);
  std::size_t tried = 0;
  for (const auto& u : candidates) {
    if (sweep.zero_in_base(u)) continue;
    ++tried;
    auto v = detail::sweep_with(sweep, u, h);
    if (std::holds_alternative<InClosureUpToBound<F>>(v.status)) {
      v.notes.push_back("multiplier found after " + std::to_string(tried) + " candidates");
      return v;
    }
  }
  return ClosureVerdict<F>{NoMultiplierFound{search.degree, e_max, tried}, {}, {}};
}

/// Necessary condition for u in the order ideal: u h in (f) + J.
template <CoefficientField F>
bool order_element_check(const ForcingPresentation<F>& A, const Polynomial<F>& u) {
  const auto& base = A.base();
  std::vector<Polynomial<F>> gens = A.data();
  gens.insert(gens.end(), base.relations.begin(), base.relations.end());
  return detail::member_of(gens, base.ring, u * A.target());
}

// --- reduction mod p -----------------------------------------------------------

struct ReducedProblem {
  Ideal<PrimeField> ideal;
  Polynomial<PrimeField> h;
};

inline RingPtr<PrimeField> reduce_ring(const RingPtr<RationalField>& ring, std::uint64_t p) {
  return make_ring(PrimeField(p), ring->names(), ring->order());
}

inline Polynomial<PrimeField> reduce_mod_p(const Polynomial<RationalField>& f, const RingPtr<PrimeField>& target) {
  std::vector<Polynomial<PrimeField>::Term> terms;
  for (const auto& t : f.terms()) {
    if (t.mono.size() != target->nvars()) throw RingMismatch("variable count differs");
    terms.push_back({target->field().from_rational(t.coeff), t.mono});
  }
  return Polynomial<PrimeField>::from_terms(target, std::move(terms));
}

/// Coefficientwise reduction; denominators are inverted mod p (BadPrime if p divides one).
inline ReducedProblem reduce_mod_p(const Ideal<RationalField>& ideal, const Polynomial<RationalField>& h,
                                               std::uint64_t p) {
  auto target = reduce_ring(ideal.ring(), p);
  std::vector<Polynomial<PrimeField>> gens;
  for (const auto& f : ideal.generators()) gens.push_back(reduce_mod_p(f, target));
  return {Ideal<PrimeField>(target, std::move(gens)), reduce_mod_p(h, target)};
}

}  // namespace paraclose

#endif  // PARACLOSE_CLOSURE_HPP
