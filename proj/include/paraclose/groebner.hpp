#ifndef PARACLOSE_GROEBNER_HPP
#define PARACLOSE_GROEBNER_HPP

// Buchberger's algorithm with cofactor tracking, normal forms, ideal
// membership certificates and colon ideals.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "paraclose/errors.hpp"
#include "paraclose/polynomial.hpp"

namespace paraclose {

/// Finitely generated ideal. Zero generators are dropped, so the zero ideal
/// is the one with no generators.
template <CoefficientField F>
class Ideal {
 public:
  Ideal(RingPtr<F> ring, std::vector<Polynomial<F>> generators) : ring_(std::move(ring)) {
    for (auto& g : generators) {
      if (!same_ring(g.ring(), ring_)) throw RingMismatch("ideal generator in foreign ring");
      if (!g.is_zero()) generators_.push_back(std::move(g));
    }
  }

  const RingPtr<F>& ring() const noexcept { return ring_; }
  const std::vector<Polynomial<F>>& generators() const noexcept { return generators_; }
  bool is_zero() const noexcept { return generators_.empty(); }

 private:
  RingPtr<F> ring_;
  std::vector<Polynomial<F>> generators_;
};

struct GroebnerStats {
  std::size_t pairs_processed = 0;
  std::size_t skipped_coprime = 0;
  std::size_t skipped_chain = 0;
  std::size_t zero_reductions = 0;
  std::size_t basis_size = 0;
  std::size_t pairs_pending = 0;
};

struct GroebnerOptions {
  /// Keeps, for every basis element, its expression in the input generators.
  bool track_cofactors = true;
  /// Called every `progress_interval` processed pairs.
  std::function<void(const GroebnerStats&)> progress;
  std::size_t progress_interval = 500;
};

/// Reduced Groebner basis. `cofactors[i][j]` is the coefficient of input
/// generator j in elements[i] (empty when tracking was disabled).
template <CoefficientField F>
struct GroebnerBasis {
  RingPtr<F> ring;
  std::vector<Polynomial<F>> generators;
  std::vector<Polynomial<F>> elements;
  std::vector<std::vector<Polynomial<F>>> cofactors;
  GroebnerStats stats;
  bool cofactors_tracked = false;

  bool tracks_cofactors() const noexcept { return cofactors_tracked; }
  bool is_unit_ideal() const noexcept { return elements.size() == 1 && elements[0].is_constant(); }
};

/// h = sum quotients[i] * basis[i] + remainder, no remainder term divisible
/// by a lead monomial of the basis.
template <CoefficientField F>
struct Division {
  Polynomial<F> remainder;
  std::vector<Polynomial<F>> quotients;
};

/// Cofactors with sum cofactors[j] * generators[j] == h.
template <CoefficientField F>
struct MembershipCertificate {
  std::vector<Polynomial<F>> cofactors;
};

/// Evidence for non-membership: the nonzero normal form.
template <CoefficientField F>
struct NotMember {
  Polynomial<F> normal_form;
};

template <CoefficientField F>
using MembershipResult = std::variant<MembershipCertificate<F>, NotMember<F>>;

namespace detail {

template <CoefficientField F>
using TermVec = std::vector<typename Polynomial<F>::Term>;

// a[ia..] + c * m * b[ib..]
template <CoefficientField F>
TermVec<F> merge_terms(const MonomialOrder& order, const TermVec<F>& a, std::size_t ia,
                       const typename F::value_type& c, const Monomial& m,
                       const TermVec<F>& b, std::size_t ib) {
  TermVec<F> out;
  out.reserve(a.size() - ia + b.size() - ib);
  std::optional<Monomial> bm;
  while (ia < a.size() && ib < b.size()) {
    if (!bm) bm = b[ib].mono * m;
    auto cmp = order.compare(a[ia].mono, *bm);
    if (cmp > 0) {
      out.push_back(a[ia++]);
    } else if (cmp < 0) {
      out.push_back({b[ib].coeff * c, std::move(*bm)});
      bm.reset();
      ++ib;
    } else {
      auto s = a[ia].coeff + b[ib].coeff * c;
      if (!s.is_zero()) out.push_back({std::move(s), a[ia].mono});
      bm.reset();
      ++ia;
      ++ib;
    }
  }
  for (; ia < a.size(); ++ia) out.push_back(a[ia]);
  for (; ib < b.size(); ++ib) out.push_back({b[ib].coeff * c, b[ib].mono * m});
  return out;
}

template <CoefficientField F>
std::optional<std::size_t> find_divisor(const std::vector<const Monomial*>& leads,
                                        const Monomial& m) {
  for (std::size_t i = 0; i < leads.size(); ++i) {
    if (leads[i] != nullptr && leads[i]->divides(m)) return i;
  }
  return std::nullopt;
}

// Full reduction of h by the polynomials whose lead is listed in `leads`
// (null entries are skipped).
template <CoefficientField F>
Division<F> reduce(const Polynomial<F>& h, const std::vector<Polynomial<F>>& basis,
                   const std::vector<const Monomial*>& leads, bool want_quotients) {
  const auto& ring = h.ring();
  const auto& order = ring->order();
  TermVec<F> work = h.terms();
  TermVec<F> remainder;
  std::vector<TermVec<F>> quotients(want_quotients ? basis.size() : 0);
  std::size_t pos = 0;
  while (pos < work.size()) {
    auto div = find_divisor<F>(leads, work[pos].mono);
    if (!div) {
      remainder.push_back(std::move(work[pos]));
      ++pos;
      continue;
    }
    const auto& g = basis[*div];
    auto c = work[pos].coeff / g.lead_coeff();
    Monomial m = work[pos].mono / g.lead_monomial();
    work = merge_terms<F>(order, work, pos + 1, -c, m, g.terms(), 1);
    pos = 0;
    if (want_quotients) quotients[*div].push_back({std::move(c), std::move(m)});
  }
  Division<F> out{Polynomial<F>::from_sorted_terms(ring, std::move(remainder)), {}};
  if (want_quotients) {
    out.quotients.reserve(basis.size());
    for (auto& q : quotients) out.quotients.push_back(Polynomial<F>::from_sorted_terms(ring, std::move(q)));
  }
  return out;
}

template <CoefficientField F>
void axpy_row(std::vector<Polynomial<F>>& row, const Polynomial<F>& q,
              const std::vector<Polynomial<F>>& other) {
  if (q.is_zero()) return;
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (!other[j].is_zero()) row[j] -= q * other[j];
  }
}

template <CoefficientField F>
class Buchberger {
 public:
  Buchberger(RingPtr<F> ring, std::vector<Polynomial<F>> generators, const GroebnerOptions& options)
      : ring_(std::move(ring)), gens_(std::move(generators)), options_(options) {}

  GroebnerBasis<F> run() {
    const bool track = options_.track_cofactors;
    for (std::size_t idx = 0; idx < gens_.size() && !unit_; ++idx) {
      if (gens_[idx].is_zero()) continue;
      std::vector<Polynomial<F>> row;
      if (track) {
        row.assign(gens_.size(), Polynomial<F>(ring_));
        row[idx] = Polynomial<F>::constant(ring_, ring_->field().one());
      }
      auto red = reduce(gens_[idx], basis_, leads(), track);
      if (red.remainder.is_zero()) continue;
      if (track) {
        for (std::size_t l = 0; l < basis_.size(); ++l) axpy_row(row, red.quotients[l], rows_[l]);
      }
      add(std::move(red.remainder), std::move(row));
    }

    while (!pending_.empty() && !unit_) {
      Pair pair = *pending_.begin();
      pending_.erase(pending_.begin());
      pending_index_.erase({pair.i, pair.j});
      ++stats_.pairs_processed;
      if (options_.progress && stats_.pairs_processed % options_.progress_interval == 0) {
        stats_.basis_size = basis_.size();
        stats_.pairs_pending = pending_.size();
        options_.progress(stats_);
      }
      const auto& gi = basis_[pair.i];
      const auto& gj = basis_[pair.j];
      if (gi.lead_monomial().coprime(gj.lead_monomial())) {
        ++stats_.skipped_coprime;
        continue;
      }
      if (chain_criterion(pair)) {
        ++stats_.skipped_chain;
        continue;
      }
      Monomial mi = pair.lcm / gi.lead_monomial();
      Monomial mj = pair.lcm / gj.lead_monomial();
      auto one = ring_->field().one();
      // basis elements are monic, so the leads cancel exactly
      auto spoly = gi.mul_term(one, mi).add_scaled(-one, mj, gj);
      auto red = reduce(spoly, basis_, leads(), track);
      if (red.remainder.is_zero()) {
        ++stats_.zero_reductions;
        continue;
      }
      std::vector<Polynomial<F>> row;
      if (track) {
        row.reserve(gens_.size());
        for (std::size_t k = 0; k < gens_.size(); ++k) {
          row.push_back(rows_[pair.i][k].mul_term(one, mi) - rows_[pair.j][k].mul_term(one, mj));
        }
        for (std::size_t l = 0; l < basis_.size(); ++l) axpy_row(row, red.quotients[l], rows_[l]);
      }
      add(std::move(red.remainder), std::move(row));
    }
    return finish();
  }

 private:
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
  };
  struct PairLess {
    const MonomialOrder* order;
    bool operator()(const Pair& a, const Pair& b) const {
      if (a.lcm.degree() != b.lcm.degree()) return a.lcm.degree() < b.lcm.degree();
      auto c = order->compare(a.lcm, b.lcm);
      if (c != 0) return c < 0;
      return std::tie(a.j, a.i) < std::tie(b.j, b.i);
    }
  };

  std::vector<const Monomial*> leads() const {
    std::vector<const Monomial*> out;
    out.reserve(basis_.size());
    for (const auto& g : basis_) out.push_back(&g.lead_monomial());
    return out;
  }

  void add(Polynomial<F> g, std::vector<Polynomial<F>> row) {
    auto inv = g.lead_coeff().inverse();
    g = g.scaled(inv);
    for (auto& r : row) r = r.scaled(inv);
    basis_.push_back(std::move(g));
    rows_.push_back(std::move(row));
    const std::size_t n = basis_.size() - 1;
    if (basis_[n].is_constant()) {
      unit_ = true;
      pending_.clear();
      pending_index_.clear();
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      Pair p{i, n, lcm(basis_[i].lead_monomial(), basis_[n].lead_monomial())};
      pending_index_.insert({i, n});
      pending_.insert(std::move(p));
    }
  }

  bool is_pending(std::size_t a, std::size_t b) const {
    if (a > b) std::swap(a, b);
    return pending_index_.count({a, b}) != 0;
  }

  bool chain_criterion(const Pair& p) const {
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      if (k == p.i || k == p.j) continue;
      if (!basis_[k].lead_monomial().divides(p.lcm)) continue;
      if (!is_pending(p.i, k) && !is_pending(p.j, k)) return true;
    }
    return false;
  }

  GroebnerBasis<F> finish() {
    const bool track = options_.track_cofactors;
    // minimalize: drop elements whose lead is a multiple of another lead
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      bool redundant = false;
      for (std::size_t j = 0; j < basis_.size() && !redundant; ++j) {
        if (i == j) continue;
        const auto& li = basis_[i].lead_monomial();
        const auto& lj = basis_[j].lead_monomial();
        if (lj.divides(li) && (!(lj == li) || j < i)) redundant = true;
      }
      if (!redundant) keep.push_back(i);
    }
    std::vector<Polynomial<F>> elems;
    std::vector<std::vector<Polynomial<F>>> rows;
    for (auto i : keep) {
      elems.push_back(basis_[i]);
      if (track) rows.push_back(rows_[i]);
    }
    // inter-reduce tails against the other minimal elements
    std::vector<Polynomial<F>> reduced;
    std::vector<std::vector<Polynomial<F>>> reduced_rows;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      std::vector<const Monomial*> others;
      for (std::size_t j = 0; j < elems.size(); ++j) {
        others.push_back(i == j ? nullptr : &elems[j].lead_monomial());
      }
      auto red = reduce(elems[i], elems, others, track);
      auto row = track ? rows[i] : std::vector<Polynomial<F>>{};
      if (track) {
        for (std::size_t l = 0; l < elems.size(); ++l) axpy_row(row, red.quotients[l], rows[l]);
      }
      reduced.push_back(std::move(red.remainder));
      reduced_rows.push_back(std::move(row));
    }
    std::vector<std::size_t> perm(reduced.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    const auto& order = ring_->order();
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
      return order.greater(reduced[a].lead_monomial(), reduced[b].lead_monomial());
    });
    GroebnerBasis<F> out{ring_, gens_, {}, {}, stats_, track};
    for (auto i : perm) {
      out.elements.push_back(std::move(reduced[i]));
      if (track) out.cofactors.push_back(std::move(reduced_rows[i]));
    }
    out.stats.basis_size = out.elements.size();
    return out;
  }

  RingPtr<F> ring_;
  std::vector<Polynomial<F>> gens_;
  GroebnerOptions options_;
  std::vector<Polynomial<F>> basis_;
  std::vector<std::vector<Polynomial<F>>> rows_;
  std::set<Pair, PairLess> pending_{PairLess{&ring_->order()}};
  std::set<std::pair<std::size_t, std::size_t>> pending_index_;
  GroebnerStats stats_;
  bool unit_ = false;
};

}  // namespace detail

/// Reduced Groebner basis of the generators in their ring's term order.
template <CoefficientField F>
GroebnerBasis<F> buchberger(std::span<const Polynomial<F>> generators, const RingPtr<F>& ring,
                            const GroebnerOptions& options = {}) {
  std::vector<Polynomial<F>> gens;
  gens.reserve(generators.size());
  for (const auto& g : generators) {
    if (!same_ring(g.ring(), ring)) throw RingMismatch("generator in foreign ring");
    gens.push_back(g);
  }
  return detail::Buchberger<F>(ring, std::move(gens), options).run();
}

template <CoefficientField F>
GroebnerBasis<F> buchberger(const Ideal<F>& ideal, const GroebnerOptions& options = {}) {
  return buchberger<F>(std::span<const Polynomial<F>>(ideal.generators()), ideal.ring(), options);
}

/// Groebner basis for another term order; the result lives in the re-ordered ring.
template <CoefficientField F>
GroebnerBasis<F> buchberger(const Ideal<F>& ideal, const MonomialOrder& order,
                            const GroebnerOptions& options = {}) {
  auto ring = ideal.ring()->with_order(order);
  std::vector<Polynomial<F>> gens;
  for (const auto& g : ideal.generators()) gens.push_back(g.map_to(ring));
  return buchberger<F>(std::span<const Polynomial<F>>(gens), ring, options);
}

template <CoefficientField F>
Division<F> divide(const Polynomial<F>& h, const GroebnerBasis<F>& basis) {
  if (!same_ring(h.ring(), basis.ring)) throw RingMismatch("normal form across rings");
  std::vector<const Monomial*> leads;
  for (const auto& g : basis.elements) leads.push_back(&g.lead_monomial());
  return detail::reduce(h, basis.elements, leads, true);
}

template <CoefficientField F>
Polynomial<F> normal_form(const Polynomial<F>& h, const GroebnerBasis<F>& basis) {
  if (!same_ring(h.ring(), basis.ring)) throw RingMismatch("normal form across rings");
  std::vector<const Monomial*> leads;
  for (const auto& g : basis.elements) leads.push_back(&g.lead_monomial());
  return detail::reduce(h, basis.elements, leads, false).remainder;
}

template <CoefficientField F>
bool contains(const GroebnerBasis<F>& basis, const Polynomial<F>& h) {
  return normal_form(h.map_to(basis.ring), basis).is_zero();
}

/// Certificate for h in terms of `basis.generators`; requires cofactor tracking.
template <CoefficientField F>
MembershipResult<F> certify_membership(const Polynomial<F>& h, const GroebnerBasis<F>& basis) {
  auto target = h.map_to(basis.ring);
  auto div = divide(target, basis);
  if (!div.remainder.is_zero()) return NotMember<F>{std::move(div.remainder)};
  if (!basis.tracks_cofactors()) {
    throw InternalError("membership certificate requested without cofactor tracking");
  }
  MembershipCertificate<F> cert;
  cert.cofactors.assign(basis.generators.size(), Polynomial<F>(basis.ring));
  for (std::size_t l = 0; l < basis.elements.size(); ++l) {
    if (div.quotients[l].is_zero()) continue;
    for (std::size_t j = 0; j < cert.cofactors.size(); ++j) {
      if (!basis.cofactors[l][j].is_zero()) cert.cofactors[j] += div.quotients[l] * basis.cofactors[l][j];
    }
  }
  Polynomial<F> check(basis.ring);
  for (std::size_t j = 0; j < cert.cofactors.size(); ++j) check += cert.cofactors[j] * basis.generators[j];
  if (!(check == target)) throw InternalError("membership certificate failed re-expansion");
  return cert;
}

/// Membership of h in the ideal spanned by `generators` (zeros allowed; the
/// certificate has one cofactor per listed generator).
template <CoefficientField F>
MembershipResult<F> membership_with_certificate(const Polynomial<F>& h,
                                                std::span<const Polynomial<F>> generators) {
  auto basis = buchberger<F>(generators, h.ring());
  return certify_membership(h, basis);
}

template <CoefficientField F>
MembershipResult<F> membership_with_certificate(const Polynomial<F>& h, const Ideal<F>& ideal) {
  if (!same_ring(h.ring(), ideal.ring())) throw RingMismatch("membership across rings");
  return membership_with_certificate<F>(h, std::span<const Polynomial<F>>(ideal.generators()));
}

/// Exact re-expansion: sum cofactors[j] * generators[j] - h == 0.
template <CoefficientField F>
bool reexpands(const MembershipCertificate<F>& cert, std::span<const Polynomial<F>> generators,
               const Polynomial<F>& h) {
  if (cert.cofactors.size() != generators.size()) return false;
  Polynomial<F> sum(h.ring());
  for (std::size_t j = 0; j < generators.size(); ++j) sum += cert.cofactors[j] * generators[j];
  return sum == h;
}

/// J subset of I, checked generator by generator.
template <CoefficientField F>
bool ideal_contains(const Ideal<F>& big, const Ideal<F>& small) {
  GroebnerOptions opts;
  opts.track_cofactors = false;
  auto basis = buchberger(big, opts);
  for (const auto& g : small.generators()) {
    if (!contains(basis, g)) return false;
  }
  return true;
}

template <CoefficientField F>
bool ideals_equal(const Ideal<F>& a, const Ideal<F>& b) {
  return ideal_contains(a, b) && ideal_contains(b, a);
}

/// (I : f) = { g : g f in I }, via I ∩ (f) = (t I + (1 - t) f) ∩ K[X].
/// Generators are returned as the reduced Groebner basis in I's ring.
template <CoefficientField F>
Ideal<F> colon_ideal(const Ideal<F>& ideal, const Polynomial<F>& f) {
  if (f.is_zero()) throw ZeroDivisorQuery("colon by the zero polynomial");
  if (!same_ring(f.ring(), ideal.ring())) throw RingMismatch("colon across rings");
  const auto& ring = ideal.ring();
  if (ideal.is_zero()) return Ideal<F>(ring, {});

  std::string t = "t";
  while (ring->index_of(t)) t += "_";
  std::vector<std::string> names{t};
  names.insert(names.end(), ring->names().begin(), ring->names().end());
  auto elim = make_ring(ring->field(), names, MonomialOrder::elimination(1));
  auto tvar = Polynomial<F>::variable(elim, 0);
  auto one = Polynomial<F>::constant(elim, ring->field().one());

  std::vector<Polynomial<F>> gens;
  for (const auto& g : ideal.generators()) gens.push_back(tvar * g.map_to(elim));
  gens.push_back((one - tvar) * f.map_to(elim));
  GroebnerOptions opts;
  opts.track_cofactors = false;
  auto basis = buchberger<F>(std::span<const Polynomial<F>>(gens), elim, opts);

  std::vector<Polynomial<F>> quotients;
  for (const auto& g : basis.elements) {
    if (g.degree_in(0) != 0) continue;
    auto q = g.map_to(ring).divide_exact(f);
    if (!q) throw InternalError("intersection element not divisible by f");
    quotients.push_back(std::move(*q));
  }
  auto reduced = buchberger<F>(std::span<const Polynomial<F>>(quotients), ring, opts);
  return Ideal<F>(ring, reduced.elements);
}

}  // namespace paraclose

#endif  // PARACLOSE_GROEBNER_HPP
