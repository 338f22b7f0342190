#ifndef PARACLOSE_CERTIFICATE_JSON_HPP
#define PARACLOSE_CERTIFICATE_JSON_HPP

// JSON form of paraclass certificates. Besides k, params and the cofactors,
// the document carries the presentation it refers to, so `verify` can rebuild
// it, and the flattened table of T-monomial coefficients
//   (x_1...x_d)^k + sum_i x_i^{k+1} sum_nu C_{i nu} T^nu + sum_nu C_nu T^nu P = 0,
// with C_{i nu} = -[T^nu] G_i, C_nu = -[T^nu] H_forcing (and likewise for J).

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "paraclose/forcing.hpp"
#include "paraclose/poly_io.hpp"

namespace paraclose {

using Json = nlohmann::ordered_json;

template <CoefficientField F>
std::string field_tag(const F& field) {
  return field.characteristic() == 0 ? std::string("Q") : "Fp:" + std::to_string(field.characteristic());
}

namespace detail {

// Splits p in K[X,T] by T-monomial; values live in K[X] (printed with the X names).
template <CoefficientField F>
std::map<std::vector<std::uint32_t>, Polynomial<F>> split_by_t(const ForcingPresentation<F>& A,
                                                              const Polynomial<F>& p) {
  std::map<std::vector<std::uint32_t>, std::vector<typename Polynomial<F>::Term>> parts;
  const std::size_t nx = A.base_nvars();
  for (const auto& t : p.terms()) {
    std::vector<std::uint32_t> nu(t.mono.exponents().begin() + static_cast<std::ptrdiff_t>(nx),
                                  t.mono.exponents().end());
    Monomial xpart = t.mono.resized(nx);
    parts[nu].push_back({-t.coeff, xpart});
  }
  std::map<std::vector<std::uint32_t>, Polynomial<F>> out;
  for (auto& [nu, terms] : parts) out.emplace(nu, Polynomial<F>::from_terms(A.base().ring, std::move(terms)));
  return out;
}

}  // namespace detail

template <CoefficientField F>
Json coefficient_table(const ForcingPresentation<F>& A, const VanishingCertificate<F>& cert) {
  std::vector<std::string> tnames;
  for (std::size_t i = 0; i < A.n(); ++i) tnames.push_back(A.t_name(i));
  // nu -> {"C": ..., "C_i": [...], "C_rel": [...]}
  std::map<std::vector<std::uint32_t>, Json> rows;
  auto zero_row = [&](const std::vector<std::uint32_t>& nu) -> Json& {
    auto it = rows.find(nu);
    if (it != rows.end()) return it->second;
    Json row;
    row["nu"] = monomial_to_string(Monomial(std::span<const std::uint32_t>(nu)), tnames);
    row["C"] = "0";
    row["C_i"] = std::vector<std::string>(cert.G.size(), "0");
    row["C_rel"] = std::vector<std::string>(cert.H.size() - 1, "0");
    return rows.emplace(nu, std::move(row)).first->second;
  };
  for (std::size_t i = 0; i < cert.G.size(); ++i) {
    for (const auto& [nu, c] : detail::split_by_t(A, cert.G[i])) zero_row(nu)["C_i"][i] = to_string(c);
  }
  for (std::size_t j = 0; j + 1 < cert.H.size(); ++j) {
    for (const auto& [nu, c] : detail::split_by_t(A, cert.H[j])) zero_row(nu)["C_rel"][j] = to_string(c);
  }
  for (const auto& [nu, c] : detail::split_by_t(A, cert.H.back())) zero_row(nu)["C"] = to_string(c);
  Json table = Json::array();
  for (auto& [nu, row] : rows) table.push_back(std::move(row));
  return table;
}

template <CoefficientField F>
Json certificate_to_json(const ForcingPresentation<F>& A, const ParameterSystem<F>& params,
                         const VanishingCertificate<F>& cert) {
  Json j;
  j["k"] = cert.k;
  j["params"] = to_strings(params.params);
  j["cofactors_G"] = to_strings(cert.G);
  j["cofactors_H"] = to_strings(cert.H);
  j["field"] = field_tag(A.ring()->field());
  j["order"] = A.ring()->order().name();
  j["base_vars"] = A.base().ring->names();
  j["vars"] = A.ring()->names();
  j["base_relations"] = to_strings(A.base().relations);
  j["f"] = to_strings(A.data());
  j["h"] = to_string(A.target());
  j["relations"] = to_strings(A.relations());
  j["coefficient_table"] = coefficient_table(A, cert);
  return j;
}

}  // namespace paraclose

#endif  // PARACLOSE_CERTIFICATE_JSON_HPP
