#ifndef PARACLOSE_TEST_SUPPORT_HPP
#define PARACLOSE_TEST_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "paraclose/poly_io.hpp"

namespace paraclose::test_support {

inline constexpr std::uint32_t kDefaultSeed = 20240917;

inline RingPtr<RationalField> qring(std::vector<std::string> names,
                                    MonomialOrder order = MonomialOrder::grevlex()) {
  return make_ring(RationalField{}, std::move(names), order);
}

inline RingPtr<PrimeField> pring(std::uint64_t p, std::vector<std::string> names,
                                 MonomialOrder order = MonomialOrder::grevlex()) {
  return make_ring(PrimeField(p), std::move(names), order);
}

template <CoefficientField F>
Polynomial<F> P(const RingPtr<F>& ring, const std::string& text) {
  return parse_polynomial(ring, text);
}

/// Random polynomial with up to `terms` terms of total degree <= max_degree,
/// small integer coefficients.
template <CoefficientField F>
Polynomial<F> random_polynomial(const RingPtr<F>& ring, std::mt19937& rng, unsigned max_degree,
                                unsigned terms, bool homogeneous = false) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<unsigned> deg(homogeneous ? max_degree : 0, max_degree);
  std::vector<typename Polynomial<F>::Term> out;
  for (unsigned t = 0; t < terms; ++t) {
    unsigned d = deg(rng);
    Monomial m(ring->nvars());
    for (unsigned k = 0; k < d; ++k) {
      std::uniform_int_distribution<std::size_t> var(0, ring->nvars() - 1);
      auto v = var(rng);
      m.set(v, m[v] + 1);
    }
    int c = coeff(rng);
    if (c == 0) c = 1;
    out.push_back({ring->field().from_integer(c), m});
  }
  return Polynomial<F>::from_terms(ring, std::move(out));
}

}  // namespace paraclose::test_support

#endif  // PARACLOSE_TEST_SUPPORT_HPP
