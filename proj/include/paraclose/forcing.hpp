#ifndef PARACLOSE_FORCING_HPP
#define PARACLOSE_FORCING_HPP

// Forcing algebras A = R[T_1..T_n]/(f_1 T_1 + ... + f_n T_n + h) over a
// presented ring R = K[X]/J, and certificates that the paraclass
// 1/(x_1...x_d) vanishes in A:
//
//   (x_1...x_d)^k = sum_i G_i x_i^{k+1} + sum_j H_j P_j     in K[X,T],
//
// where P_j runs over the generators of J followed by the forcing relation.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "paraclose/errors.hpp"
#include "paraclose/groebner.hpp"
#include "paraclose/polynomial.hpp"

namespace paraclose {

/// R = K[X]/J. An empty relation list presents the polynomial ring.
template <CoefficientField F>
struct RingPresentation {
  RingPtr<F> ring;
  std::vector<Polynomial<F>> relations;

  explicit RingPresentation(RingPtr<F> r, std::vector<Polynomial<F>> rel = {})
      : ring(std::move(r)) {
    for (auto& p : rel) {
      if (!same_ring(p.ring(), ring)) throw RingMismatch("relation outside the base ring");
      if (!p.is_zero()) relations.push_back(std::move(p));
    }
  }
};

/// Parameters x_1..x_d, polynomials in the base variables. Taken on trust.
template <CoefficientField F>
struct ParameterSystem {
  std::vector<Polynomial<F>> params;

  std::size_t dimension() const noexcept { return params.size(); }
};

template <CoefficientField F>
class ForcingPresentation {
 public:
  ForcingPresentation(RingPresentation<F> base, std::vector<Polynomial<F>> data, Polynomial<F> target)
      : base_(std::move(base)), data_(std::move(data)), target_(std::move(target)) {
    if (data_.empty()) throw EmptyData("forcing data f_1..f_n is empty");
    for (const auto& f : data_) {
      if (!same_ring(f.ring(), base_.ring)) throw RingMismatch("forcing datum outside the base ring");
    }
    if (!same_ring(target_.ring(), base_.ring)) throw RingMismatch("forcing target outside the base ring");
    std::vector<std::string> tnames;
    for (std::size_t i = 0; i < data_.size(); ++i) {
      std::string name = "T" + std::to_string(i + 1);
      while (base_.ring->index_of(name)) name += "_";
      tnames.push_back(std::move(name));
    }
    ring_ = base_.ring->extended(tnames);
    for (const auto& j : base_.relations) relations_.push_back(j.map_to(ring_));
    Polynomial<F> forcing = target_.map_to(ring_);
    for (std::size_t i = 0; i < data_.size(); ++i) {
      forcing += data_[i].map_to(ring_) * Polynomial<F>::variable(ring_, base_.ring->nvars() + i);
    }
    relations_.push_back(std::move(forcing));
  }

  const RingPresentation<F>& base() const noexcept { return base_; }
  const std::vector<Polynomial<F>>& data() const noexcept { return data_; }
  const Polynomial<F>& target() const noexcept { return target_; }
  std::size_t n() const noexcept { return data_.size(); }

  /// K[X, T_1..T_n]; X-variables first.
  const RingPtr<F>& ring() const noexcept { return ring_; }
  std::size_t base_nvars() const noexcept { return base_.ring->nvars(); }
  Polynomial<F> t_variable(std::size_t i) const {
    return Polynomial<F>::variable(ring_, base_nvars() + i);
  }
  std::string t_name(std::size_t i) const { return ring_->names()[base_nvars() + i]; }

  /// Lifted base relations followed by the forcing relation.
  const std::vector<Polynomial<F>>& relations() const noexcept { return relations_; }
  const Polynomial<F>& forcing_relation() const noexcept { return relations_.back(); }

  Polynomial<F> lift(const Polynomial<F>& p) const { return p.map_to(ring_); }

 private:
  RingPresentation<F> base_;
  std::vector<Polynomial<F>> data_;
  Polynomial<F> target_;
  RingPtr<F> ring_;
  std::vector<Polynomial<F>> relations_;
};

template <CoefficientField F>
ForcingPresentation<F> forcing_presentation(RingPresentation<F> base, std::vector<Polynomial<F>> data,
                                            Polynomial<F> target) {
  return ForcingPresentation<F>(std::move(base), std::move(data), std::move(target));
}

/// (x_1...x_d)^k = sum G_i x_i^{k+1} + sum H_j relation_j, exactly in K[X,T].
template <CoefficientField F>
struct VanishingCertificate {
  unsigned k = 0;
  std::vector<Polynomial<F>> G;
  std::vector<Polynomial<F>> H;
};

/// X^r = sum G_i x_i^{r_i+1} + sum H_j relation_j, with a per-parameter exponent.
template <CoefficientField F>
struct AnisotropicWitness {
  std::vector<unsigned> r;
  std::vector<Polynomial<F>> G;
  std::vector<Polynomial<F>> H;
};

struct NotFoundUpTo {
  unsigned k_max = 0;
};

template <CoefficientField F>
using VanishingResult = std::variant<VanishingCertificate<F>, NotFoundUpTo>;

namespace detail {

template <CoefficientField F>
std::vector<Polynomial<F>> lifted_params(const ForcingPresentation<F>& A, const ParameterSystem<F>& params) {
  if (params.params.empty()) throw ArityMismatch("empty parameter system");
  std::vector<Polynomial<F>> out;
  for (const auto& x : params.params) out.push_back(A.lift(x));
  return out;
}

template <CoefficientField F>
Polynomial<F> product_power(const std::vector<Polynomial<F>>& xs, const std::vector<unsigned>& exps) {
  Polynomial<F> acc = Polynomial<F>::constant(xs.front().ring(), 1);
  for (std::size_t i = 0; i < xs.size(); ++i) acc *= xs[i].pow(exps[i]);
  return acc;
}

// lhs - sum G_i x_i^{r_i+1} - sum H_j P_j
template <CoefficientField F>
Polynomial<F> witness_defect(const ForcingPresentation<F>& A, const std::vector<Polynomial<F>>& xs,
                             const std::vector<unsigned>& r, const std::vector<Polynomial<F>>& G,
                             const std::vector<Polynomial<F>>& H) {
  Polynomial<F> defect = product_power(xs, r);
  for (std::size_t i = 0; i < xs.size(); ++i) defect -= G[i].map_to(A.ring()) * xs[i].pow(r[i] + 1);
  for (std::size_t j = 0; j < H.size(); ++j) defect -= H[j].map_to(A.ring()) * A.relations()[j];
  return defect;
}

}  // namespace detail

/// Exact re-expansion of the certificate identity; never uses Groebner bases.
template <CoefficientField F>
bool verify_certificate(const ForcingPresentation<F>& A, const ParameterSystem<F>& params,
                        const VanishingCertificate<F>& cert) {
  if (cert.G.size() != params.dimension()) {
    throw ArityMismatch("certificate has " + std::to_string(cert.G.size()) + " G-cofactors for " +
                        std::to_string(params.dimension()) + " parameters");
  }
  if (cert.H.size() != A.relations().size()) {
    throw ArityMismatch("certificate has " + std::to_string(cert.H.size()) + " H-cofactors for " +
                        std::to_string(A.relations().size()) + " relations");
  }
  auto xs = detail::lifted_params(A, params);
  std::vector<unsigned> r(xs.size(), cert.k);
  return detail::witness_defect(A, xs, r, cert.G, cert.H).is_zero();
}

/// Searches k = 0..k_max for (x_1...x_d)^k in (x_i^{k+1}) + defining ideal.
/// NotFoundUpTo is inconclusive, not a proof of parasolidity.
template <CoefficientField F>
VanishingResult<F> paraclass_vanishes(const ForcingPresentation<F>& A, const ParameterSystem<F>& params,
                                      unsigned k_max, const GroebnerOptions& options = {}) {
  auto xs = detail::lifted_params(A, params);
  const std::size_t d = xs.size();
  GroebnerOptions opts = options;
  opts.track_cofactors = true;
  for (unsigned k = 0; k <= k_max; ++k) {
    std::vector<Polynomial<F>> gens;
    for (const auto& x : xs) gens.push_back(x.pow(k + 1));
    gens.insert(gens.end(), A.relations().begin(), A.relations().end());
    auto target = detail::product_power(xs, std::vector<unsigned>(d, k));
    auto basis = buchberger<F>(std::span<const Polynomial<F>>(gens), A.ring(), opts);
    auto res = certify_membership(target, basis);
    if (auto* cert = std::get_if<MembershipCertificate<F>>(&res)) {
      VanishingCertificate<F> out;
      out.k = k;
      out.G.assign(cert->cofactors.begin(), cert->cofactors.begin() + static_cast<std::ptrdiff_t>(d));
      out.H.assign(cert->cofactors.begin() + static_cast<std::ptrdiff_t>(d), cert->cofactors.end());
      if (!verify_certificate(A, params, out)) throw InternalError("paraclass certificate failed re-expansion");
      return out;
    }
  }
  return NotFoundUpTo{k_max};
}

/// Uniform certificate with k = max r_i, obtained by multiplying the
/// anisotropic identity by prod x_i^{k - r_i}.
template <CoefficientField F>
VanishingCertificate<F> normalize_certificate(const ForcingPresentation<F>& A, const ParameterSystem<F>& params,
                                              const AnisotropicWitness<F>& w) {
  auto xs = detail::lifted_params(A, params);
  if (w.r.size() != xs.size() || w.G.size() != xs.size() || w.H.size() != A.relations().size()) {
    throw ArityMismatch("anisotropic witness arity");
  }
  if (!detail::witness_defect(A, xs, w.r, w.G, w.H).is_zero()) {
    throw InvalidWitness("anisotropic identity fails re-expansion");
  }
  unsigned k = 0;
  for (auto e : w.r) k = std::max(k, e);
  VanishingCertificate<F> out;
  out.k = k;
  std::vector<unsigned> lift(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) lift[i] = k - w.r[i];
  auto all = detail::product_power(xs, lift);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    auto others = lift;
    others[i] = 0;
    out.G.push_back(w.G[i].map_to(A.ring()) * detail::product_power(xs, others));
  }
  for (const auto& h : w.H) out.H.push_back(h.map_to(A.ring()) * all);
  if (!verify_certificate(A, params, out)) throw InternalError("normalized certificate failed re-expansion");
  return out;
}

/// The identity at k multiplied by x_1...x_d gives one at k + 1.
template <CoefficientField F>
VanishingCertificate<F> raise_certificate(const ForcingPresentation<F>& A, const ParameterSystem<F>& params,
                                          const VanishingCertificate<F>& cert) {
  auto xs = detail::lifted_params(A, params);
  VanishingCertificate<F> out;
  out.k = cert.k + 1;
  std::vector<unsigned> ones(xs.size(), 1);
  auto all = detail::product_power(xs, ones);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    auto others = ones;
    others[i] = 0;
    out.G.push_back(cert.G[i] * detail::product_power(xs, others));
  }
  for (const auto& h : cert.H) out.H.push_back(h * all);
  return out;
}

/// Characteristic p: apply the e-th Frobenius to the identity and multiply by
/// (x_1...x_d)^{q-1}; the result certifies exponent (k+1)q - 1, q = p^e.
template <CoefficientField F>
VanishingCertificate<F> frobenius_propagate(const ForcingPresentation<F>& A, const ParameterSystem<F>& params,
                                            const VanishingCertificate<F>& cert, unsigned e) {
  const std::uint64_t p = A.ring()->field().characteristic();
  if (p == 0) throw WrongCharacteristic("Frobenius propagation needs characteristic p");
  auto xs = detail::lifted_params(A, params);
  std::uint64_t q = 1;
  for (unsigned i = 0; i < e; ++i) q *= p;
  auto shift = detail::product_power(xs, std::vector<unsigned>(xs.size(), static_cast<unsigned>(q - 1)));
  VanishingCertificate<F> out;
  out.k = static_cast<unsigned>((cert.k + 1) * q - 1);
  for (const auto& g : cert.G) out.G.push_back(frobenius_power(g, e) * shift);
  for (std::size_t j = 0; j < cert.H.size(); ++j) {
    out.H.push_back(frobenius_power(cert.H[j], e) * A.relations()[j].pow(q - 1) * shift);
  }
  return out;
}

// --- transport along the algebra maps between forcing algebras -------------

/// target.data[i] = sum_j matrix[i][j] * source.data[j]; S_j -> sum_i matrix[i][j] T_i.
template <CoefficientField F>
struct EnlargeMap {
  std::vector<std::vector<Polynomial<F>>> matrix;
};
/// source.target = r * target.target; S_i -> r T_i.
template <CoefficientField F>
struct ScaleMap {
  Polynomial<F> r;
};
/// target.target = a + source.target with a = sum a_i f_i; S_i -> T_i + a_i.
template <CoefficientField F>
struct TranslateMap {
  std::vector<Polynomial<F>> a;
};

template <CoefficientField F>
using TransportMap = std::variant<EnlargeMap<F>, ScaleMap<F>, TranslateMap<F>>;

/// Pushes a certificate for `source` forward along the algebra map to `target`.
template <CoefficientField F>
VanishingCertificate<F> transport_certificate(const TransportMap<F>& map, const ForcingPresentation<F>& source,
                                              const ForcingPresentation<F>& target,
                                              const ParameterSystem<F>& params,
                                              const VanishingCertificate<F>& cert) {
  const auto& tr = target.ring();
  if (source.base().relations.size() != target.base().relations.size()) {
    throw MapMismatch("source and target have different base relations");
  }
  for (std::size_t j = 0; j < source.base().relations.size(); ++j) {
    if (!(source.base().relations[j].map_to(target.base().ring) == target.base().relations[j])) {
      throw MapMismatch("source and target have different base relations");
    }
  }
  std::vector<Polynomial<F>> images;
  for (std::size_t v = 0; v < source.base_nvars(); ++v) {
    images.push_back(Polynomial<F>::variable(tr, source.ring()->names()[v]));
  }
  Polynomial<F> multiplier = Polynomial<F>::constant(tr, 1);
  std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, EnlargeMap<F>>) {
          if (m.matrix.size() != target.n()) throw MapMismatch("enlarge matrix row count");
          for (std::size_t j = 0; j < source.n(); ++j) {
            Polynomial<F> img(tr);
            for (std::size_t i = 0; i < target.n(); ++i) {
              if (m.matrix[i].size() != source.n()) throw MapMismatch("enlarge matrix column count");
              img += target.lift(m.matrix[i][j]) * target.t_variable(i);
            }
            images.push_back(std::move(img));
          }
        } else if constexpr (std::is_same_v<M, ScaleMap<F>>) {
          if (source.n() != target.n()) throw MapMismatch("scale map needs equal data length");
          multiplier = target.lift(m.r);
          for (std::size_t i = 0; i < source.n(); ++i) images.push_back(multiplier * target.t_variable(i));
        } else {
          if (source.n() != target.n() || m.a.size() != source.n()) {
            throw MapMismatch("translate map needs one a_i per datum");
          }
          for (std::size_t i = 0; i < source.n(); ++i) {
            images.push_back(target.t_variable(i) + target.lift(m.a[i]));
          }
        }
      },
      map);

  auto phi = [&](const Polynomial<F>& p) {
    return substitute(p, std::span<const Polynomial<F>>(images));
  };
  if (!(phi(source.forcing_relation()) == multiplier * target.forcing_relation())) {
    throw MapMismatch("image of the source forcing relation is not the target forcing relation");
  }
  VanishingCertificate<F> out;
  out.k = cert.k;
  for (const auto& g : cert.G) out.G.push_back(phi(g));
  for (std::size_t j = 0; j + 1 < cert.H.size(); ++j) out.H.push_back(phi(cert.H[j]));
  out.H.push_back(phi(cert.H.back()) * multiplier);
  if (!verify_certificate(target, params, out)) throw MapMismatch("transported certificate does not verify");
  return out;
}

// --- dimension two ----------------------------------------------------------

/// 1 = (a / x^{k-1}) y + (b / y^{k-1}) x on D(x,y), i.e.
/// x^{k-1} y^{k-1} = a y^k + b x^k modulo the defining ideal.
template <CoefficientField F>
struct UnitPartition {
  unsigned k = 0;
  Polynomial<F> a;
  Polynomial<F> b;
  VanishingCertificate<F> certificate;
  bool verified = false;
};

template <CoefficientField F>
using AffineResult = std::variant<UnitPartition<F>, NotFoundUpTo>;

/// Cleared-denominator identity x^{k-1} y^{k-1} - a y^k - b x^k - sum H_j P_j == 0.
template <CoefficientField F>
bool verify_unit_partition(const ForcingPresentation<F>& A, const Polynomial<F>& x, const Polynomial<F>& y,
                           const UnitPartition<F>& part) {
  if (part.k == 0 || part.certificate.H.size() != A.relations().size()) return false;
  auto X = A.lift(x), Y = A.lift(y);
  auto lhs = X.pow(part.k - 1) * Y.pow(part.k - 1) - part.a * Y.pow(part.k) - part.b * X.pow(part.k);
  for (std::size_t j = 0; j < A.relations().size(); ++j) lhs -= part.certificate.H[j] * A.relations()[j];
  return lhs.is_zero();
}

/// Affineness of D(x,y) in Spec A read off from a paraclass certificate for (x,y).
template <CoefficientField F>
AffineResult<F> affine_criterion_dim2(const ForcingPresentation<F>& A, const Polynomial<F>& x,
                                      const Polynomial<F>& y, unsigned k_max) {
  ParameterSystem<F> params{{x, y}};
  auto res = paraclass_vanishes(A, params, k_max);
  if (auto* nf = std::get_if<NotFoundUpTo>(&res)) return *nf;
  auto cert = std::get<VanishingCertificate<F>>(std::move(res));
  UnitPartition<F> part{cert.k + 1, cert.G[1], cert.G[0], cert, false};
  part.verified = verify_unit_partition(A, x, y, part);
  if (!part.verified) throw InternalError("unit partition failed re-expansion");
  return part;
}

// --- optional checks on the base ring ----------------------------------------

/// Heuristic: (x_1..x_d) + J has a zero-dimensional leading-term ideal.
template <CoefficientField F>
bool parameters_look_zero_dimensional(const RingPresentation<F>& base, const ParameterSystem<F>& params) {
  std::vector<Polynomial<F>> gens = params.params;
  gens.insert(gens.end(), base.relations.begin(), base.relations.end());
  GroebnerOptions opts;
  opts.track_cofactors = false;
  auto gb = buchberger<F>(std::span<const Polynomial<F>>(gens), base.ring, opts);
  if (gb.is_unit_ideal()) return false;
  for (std::size_t v = 0; v < base.ring->nvars(); ++v) {
    bool pure = false;
    for (const auto& g : gb.elements) {
      const auto& m = g.lead_monomial();
      if (m[v] != 0 && m.degree() == m[v]) pure = true;
    }
    if (!pure) return false;
  }
  return true;
}

/// Bounded check that the paraclass is nonzero in R itself: returns the first
/// k <= k_max with (x_1...x_d)^k in (x_i^{k+1}) + J, or nullopt.
template <CoefficientField F>
std::optional<unsigned> paraclass_vanishes_in_base(const RingPresentation<F>& base,
                                                   const ParameterSystem<F>& params, unsigned k_max) {
  GroebnerOptions opts;
  opts.track_cofactors = false;
  const std::size_t d = params.dimension();
  for (unsigned k = 0; k <= k_max; ++k) {
    std::vector<Polynomial<F>> gens;
    for (const auto& x : params.params) gens.push_back(x.pow(k + 1));
    gens.insert(gens.end(), base.relations.begin(), base.relations.end());
    auto gb = buchberger<F>(std::span<const Polynomial<F>>(gens), base.ring, opts);
    if (contains(gb, detail::product_power(params.params, std::vector<unsigned>(d, k)))) return k;
  }
  return std::nullopt;
}

}  // namespace paraclose

#endif  // PARACLOSE_FORCING_HPP
