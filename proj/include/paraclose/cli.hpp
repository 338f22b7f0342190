#ifndef PARACLOSE_CLI_HPP
#define PARACLOSE_CLI_HPP

// Command layer behind the `paraclose` executable. Each command takes a
// problem file (or a certificate document) and returns a RunReport; the
// executable only handles flags, output files and exit codes.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "paraclose/certificate_json.hpp"
#include "paraclose/closure.hpp"
#include "paraclose/forcing.hpp"
#include "paraclose/groebner.hpp"
#include "paraclose/monomial_closure.hpp"
#include "paraclose/poly_io.hpp"
#include "paraclose/problem_file.hpp"

namespace paraclose {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { kExitVerdict = 0, kExitInternal = 1, kExitInconclusive = 2, kExitInputError = 3 };

struct RunReport {
  Json body;
  int exit_code = kExitVerdict;
  std::vector<std::string> summary;  // human-readable lines

  std::string verdict() const { return body.value("verdict", ""); }
};

struct CommandOptions {
  std::optional<unsigned> k_max;
  std::optional<unsigned> e_max;
  std::optional<unsigned> degree_bound;
  std::optional<std::uint64_t> seed;
};

namespace detail {

/// Calls fn(field) with the coefficient field named by the `field` key.
template <class Fn>
auto with_field(const ProblemFile& pf, Fn&& fn) {
  const std::string tag = pf.value_or("field", "Q");
  if (tag == "Q") return fn(RationalField{});
  if (tag.rfind("Fp:", 0) == 0) {
    std::string digits = tag.substr(3);
    if (!digits.empty() && digits.size() <= 10 && digits.find_first_not_of("0123456789") == std::string::npos) {
      return fn(PrimeField(std::stoull(digits)));
    }
  }
  const auto& e = pf.entry("field");
  throw ParseError("field must be Q or Fp:<p>, got '" + tag + "'", e.line, e.column);
}

template <CoefficientField F>
struct Loaded {
  RingPtr<F> ring;
  RingPresentation<F> base;
  std::vector<Polynomial<F>> f;
  std::optional<Polynomial<F>> h;
  std::vector<Polynomial<F>> params;
};

template <CoefficientField F>
Loaded<F> load(const ProblemFile& pf, F field) {
  auto ring = make_ring(std::move(field), pf.variables(), pf.order());
  RingPresentation<F> base(ring, pf.polynomials(ring, "relations"));
  return Loaded<F>{ring, std::move(base), pf.polynomials(ring, "f"), pf.polynomial(ring, "h"),
                   pf.polynomials(ring, "params")};
}

inline void require(const ProblemFile& pf, const std::vector<std::string>& keys, const std::string& command) {
  for (const auto& k : keys) {
    if (!pf.has(k)) throw ParseError(command + " needs key '" + k + "'", 0, 0);
  }
}

inline Json inputs_echo(const ProblemFile& pf, const CommandOptions& opts) {
  Json in;
  for (const auto& [k, e] : pf.entries()) in[k] = e.value;
  if (opts.seed) in["seed"] = *opts.seed;
  return in;
}

inline RunReport start(const std::string& command, const ProblemFile& pf, const CommandOptions& opts) {
  RunReport r;
  r.body["command"] = command;
  r.body["tool_version"] = kToolVersion;
  r.body["inputs"] = inputs_echo(pf, opts);
  return r;
}

inline unsigned bound(const ProblemFile& pf, const std::optional<unsigned>& flag, const std::string& key,
                      unsigned fallback) {
  if (flag) return *flag;
  return pf.number(key).value_or(fallback);
}

template <CoefficientField F>
Json membership_json(const MembershipCertificate<F>& cert) {
  Json j;
  j["cofactors"] = to_strings(cert.cofactors);
  return j;
}

}  // namespace detail

// --- commands ----------------------------------------------------------------

/// h in (f) + J, with cofactors for f followed by the relations.
inline RunReport cmd_membership(const ProblemFile& pf, const CommandOptions& opts = {}) {
  detail::require(pf, {"f", "h"}, "membership");
  return detail::with_field(pf, [&](auto field) {
    using F = decltype(field);
    auto in = detail::load<F>(pf, field);
    auto r = detail::start("membership", pf, opts);
    std::vector<Polynomial<F>> gens = in.f;
    gens.insert(gens.end(), in.base.relations.begin(), in.base.relations.end());
    auto res = membership_with_certificate(*in.h, std::span<const Polynomial<F>>(gens));
    if (auto* cert = std::get_if<MembershipCertificate<F>>(&res)) {
      bool ok = reexpands(*cert, std::span<const Polynomial<F>>(gens), *in.h);
      r.body["verdict"] = "member";
      r.body["certificate"] = detail::membership_json(*cert);
      r.body["certificate_verified"] = ok;
      r.summary.push_back("member: h = sum of cofactors times generators");
      for (std::size_t i = 0; i < gens.size(); ++i) {
        r.summary.push_back("  [" + to_string(gens[i]) + "] * (" + to_string(cert->cofactors[i]) + ")");
      }
      if (!ok) r.exit_code = kExitInternal;
    } else {
      const auto& nm = std::get<NotMember<F>>(res);
      r.body["verdict"] = "not_member";
      r.body["details"]["normal_form"] = to_string(nm.normal_form);
      r.summary.push_back("not a member; normal form " + to_string(nm.normal_form));
    }
    return r;
  });
}

/// Searches k = 0..k_max for the paraclass identity in the forcing algebra.
inline RunReport cmd_paraclass(const ProblemFile& pf, const CommandOptions& opts = {}) {
  detail::require(pf, {"f", "h", "params"}, "paraclass");
  return detail::with_field(pf, [&](auto field) {
    using F = decltype(field);
    auto in = detail::load<F>(pf, field);
    auto r = detail::start("paraclass", pf, opts);
    const unsigned k_max = detail::bound(pf, opts.k_max, "k_max", 6);
    auto A = forcing_presentation(in.base, in.f, *in.h);
    ParameterSystem<F> params{in.params};
    Json details;
    details["k_max"] = k_max;
    details["relations"] = to_strings(A.relations());
    details["parameters_look_zero_dimensional"] = parameters_look_zero_dimensional(in.base, params);
    auto base_k = paraclass_vanishes_in_base(in.base, params, k_max);
    details["paraclass_zero_in_base"] = base_k ? Json(*base_k) : Json("not up to k_max");
    auto res = paraclass_vanishes(A, params, k_max);
    if (auto* cert = std::get_if<VanishingCertificate<F>>(&res)) {
      bool ok = verify_certificate(A, params, *cert);
      r.body["verdict"] = "vanishes";
      details["k"] = cert->k;
      r.body["details"] = details;
      r.body["certificate"] = certificate_to_json(A, params, *cert);
      r.body["certificate_verified"] = ok;
      r.summary.push_back("paraclass vanishes at k = " + std::to_string(cert->k) +
                          (ok ? " (certificate re-verified)" : " (CERTIFICATE FAILED RE-VERIFICATION)"));
      if (!ok) r.exit_code = kExitInternal;
    } else {
      r.body["verdict"] = "inconclusive";
      r.body["details"] = details;
      r.summary.push_back("inconclusive: no vanishing found up to k = " + std::to_string(k_max));
      r.exit_code = kExitInconclusive;
    }
    if (base_k) r.summary.push_back("note: the paraclass is already zero in the base ring at k = " + std::to_string(*base_k));
    return r;
  });
}

/// Separating functional and certificate for h outside I in the polynomial ring.
inline RunReport cmd_regular_cert(const ProblemFile& pf, const CommandOptions& opts = {}) {
  detail::require(pf, {"f", "h"}, "regular-cert");
  return detail::with_field(pf, [&](auto field) {
    using F = decltype(field);
    auto in = detail::load<F>(pf, field);
    if (!in.base.relations.empty()) throw ParseError("regular-cert works over the polynomial ring; drop 'relations'", 0, 0);
    auto r = detail::start("regular-cert", pf, opts);
    Ideal<F> ideal(in.ring, in.f);
    RegularResult<F> res = HIsMember<F>{};
    try {
      res = regular_certificate(ideal, *in.h);
    } catch (const SearchCapExceeded& e) {
      r.body["verdict"] = "inconclusive";
      r.body["details"]["reason"] = e.what();
      r.summary.push_back(std::string("inconclusive: ") + e.what());
      r.exit_code = kExitInconclusive;
      return r;
    }
    if (auto* mem = std::get_if<HIsMember<F>>(&res)) {
      bool ok = reexpands(mem->certificate, std::span<const Polynomial<F>>(ideal.generators()), *in.h);
      r.body["verdict"] = "h_is_member";
      r.body["certificate"] = detail::membership_json(mem->certificate);
      r.body["certificate_verified"] = ok;
      r.summary.push_back("h lies in I");
      if (!ok) r.exit_code = kExitInternal;
      return r;
    }
    auto& rc = std::get<RegularCertificate<F>>(res);
    bool ok = verify_certificate(rc.presentation, rc.params, rc.certificate) &&
              functional_separates(rc.functional, ideal.generators(), *in.h);
    Json fun;
    std::vector<unsigned> rvec(rc.witness.r.begin(), rc.witness.r.end());
    fun["r"] = rvec;
    Json coeffs = Json::array();
    for (const auto& [mono, c] : rc.functional.coefficients) {
      coeffs.push_back({{"monomial", monomial_to_string(mono, in.ring->names())}, {"c", c.to_string()}});
    }
    fun["coefficients"] = coeffs;
    r.body["verdict"] = "certificate";
    r.body["details"]["functional"] = fun;
    r.body["details"]["multiplier"] = to_string(rc.multiplier);
    r.body["details"]["local_membership_may_differ"] = rc.local_membership_may_differ;
    r.body["certificate"] = certificate_to_json(rc.presentation, rc.params, rc.certificate);
    r.body["certificate_verified"] = ok;
    r.summary.push_back("h is not in I; separating functional on the box r = " +
                        monomial_to_string(rc.functional.r, in.ring->names()));
    r.summary.push_back("multiplier " + to_string(rc.multiplier) + ", paraclass certificate at k = " +
                        std::to_string(rc.certificate.k) + (ok ? " (re-verified)" : " (FAILED RE-VERIFICATION)"));
    if (rc.local_membership_may_differ) r.summary.push_back("note: I has a generator that is a unit at the origin");
    if (!ok) r.exit_code = kExitInternal;
    return r;
  });
}

/// u h^{p^e} in I^{[p^e]} + J for e <= e_max, with `u` given or searched up to `search_degree`.
inline RunReport cmd_tight(const ProblemFile& pf, const CommandOptions& opts = {}) {
  detail::require(pf, {"f", "h"}, "tight");
  return detail::with_field(pf, [&](auto field) -> RunReport {
    using F = decltype(field);
    if (field.characteristic() == 0) throw WrongCharacteristic("tight needs field Fp:<p>");
    auto in = detail::load<F>(pf, field);
    auto r = detail::start("tight", pf, opts);
    const unsigned e_max = detail::bound(pf, opts.e_max, "e_max", 2);
    Ideal<F> ideal(in.ring, in.f);
    ClosureVerdict<F> v{NoMultiplierFound{}, {}, {}};
    if (pf.has("u")) {
      v = tight_closure_test(in.base, ideal, *in.h, *pf.polynomial(in.ring, "u"), e_max);
    } else {
      unsigned deg = pf.number("search_degree").value_or(detail::bound(pf, opts.degree_bound, "degree_bound", 2));
      v = tight_closure_test(in.base, ideal, *in.h, SearchUpToDegree{deg}, e_max);
    }
    Json details;
    details["e_max"] = e_max;
    details["passes"] = v.passes;
    details["notes"] = v.notes;
    if (auto* no = std::get_if<NotInClosure<F>>(&v.status)) {
      r.body["verdict"] = "not_in_closure";
      details["e"] = no->e;
      details["normal_form"] = to_string(no->normal_form);
      r.summary.push_back("not in the closure: fails at e = " + std::to_string(no->e) +
                          " (remainder " + to_string(no->normal_form) + ")");
    } else if (auto* yes = std::get_if<InClosureUpToBound<F>>(&v.status)) {
      r.body["verdict"] = "in_closure_up_to_bound";
      details["multiplier"] = to_string(yes->multiplier);
      r.summary.push_back("u h^q lies in I^[q] + J for all e <= " + std::to_string(e_max) + " with u = " +
                          to_string(yes->multiplier));
    } else {
      const auto& nf = std::get<NoMultiplierFound>(v.status);
      r.body["verdict"] = "no_multiplier_found";
      details["search_degree"] = nf.degree;
      details["candidates"] = nf.candidates;
      r.summary.push_back("no multiplier of degree <= " + std::to_string(nf.degree) + " passes all e <= " +
                          std::to_string(e_max));
      r.exit_code = kExitInconclusive;
    }
    r.body["details"] = details;
    return r;
  });
}

/// Briancon-Skoda desk check for a monomial ideal given in `f`.
inline RunReport cmd_bskoda(const ProblemFile& pf, const CommandOptions& opts = {}) {
  detail::require(pf, {"f"}, "bskoda");
  return detail::with_field(pf, [&](auto field) -> RunReport {
    using F = decltype(field);
    if (field.characteristic() == 0) throw WrongCharacteristic("bskoda needs field Fp:<p>");
    auto in = detail::load<F>(pf, field);
    auto r = detail::start("bskoda", pf, opts);
    auto ideal = MonomialIdeal::from_polynomials(in.f, in.ring->nvars());
    const unsigned n = pf.number("n").value_or(static_cast<unsigned>(ideal.generators().size()));
    const unsigned w = pf.number("w").value_or(0);
    const unsigned deg = detail::bound(pf, opts.degree_bound, "degree_bound", 8);
    const unsigned e_max = detail::bound(pf, opts.e_max, "e_max", 1);
    auto rep = briancon_skoda_check(in.ring, ideal, n, w, deg, e_max);
    Json j;
    j["ideal"] = rep.ideal;
    j["n"] = rep.n;
    j["w"] = rep.w;
    j["p"] = rep.p;
    j["violations"] = rep.violations;
    j["checked"] = rep.checked;
    r.body["verdict"] = rep.pass() ? "pass" : "violations";
    r.body["details"] = j;
    r.summary.push_back(std::to_string(rep.checked) + " monomials of degree <= " + std::to_string(deg) +
                        " in the closure of I^" + std::to_string(n + w) + " checked against I^" +
                        std::to_string(w + 1) + ": " + std::to_string(rep.violations.size()) + " violations");
    return r;
  });
}

/// lhs - rhs in (ideal) + defining relations; with `f` present the ring is the forcing algebra's.
inline RunReport cmd_identity(const ProblemFile& pf, const CommandOptions& opts = {}) {
  detail::require(pf, {"lhs", "rhs"}, "identity");
  return detail::with_field(pf, [&](auto field) {
    using F = decltype(field);
    auto in = detail::load<F>(pf, field);
    auto r = detail::start("identity", pf, opts);
    RingPtr<F> ring = in.ring;
    std::vector<Polynomial<F>> gens;
    if (!in.f.empty()) {
      if (!in.h) throw ParseError("identity with 'f' needs 'h'", 0, 0);
      auto A = forcing_presentation(in.base, in.f, *in.h);
      ring = A.ring();
      gens = pf.polynomials(ring, "ideal");
      gens.insert(gens.end(), A.relations().begin(), A.relations().end());
    } else {
      gens = pf.polynomials(ring, "ideal");
      gens.insert(gens.end(), in.base.relations.begin(), in.base.relations.end());
    }
    auto diff = *pf.polynomial(ring, "lhs") - *pf.polynomial(ring, "rhs");
    auto res = membership_with_certificate(diff, std::span<const Polynomial<F>>(gens));
    r.body["details"]["ring"] = ring->names();
    r.body["details"]["ideal"] = to_strings(gens);
    if (auto* cert = std::get_if<MembershipCertificate<F>>(&res)) {
      bool ok = reexpands(*cert, std::span<const Polynomial<F>>(gens), diff);
      r.body["verdict"] = "holds";
      r.body["certificate"] = detail::membership_json(*cert);
      r.body["certificate_verified"] = ok;
      r.summary.push_back("identity holds modulo the ideal (cofactors re-verified: " + std::string(ok ? "yes" : "NO") + ")");
      if (!ok) r.exit_code = kExitInternal;
    } else {
      const auto& nm = std::get<NotMember<F>>(res);
      r.body["verdict"] = "fails";
      r.body["details"]["normal_form"] = to_string(nm.normal_form);
      r.summary.push_back("identity fails; normal form of lhs - rhs is " + to_string(nm.normal_form));
    }
    return r;
  });
}

namespace detail {

inline const Json& field_of(const Json& doc, const std::string& key) {
  if (!doc.contains(key)) throw ParseError("certificate document lacks '" + key + "'", 0, 0);
  return doc.at(key);
}

inline std::string join(const Json& arr) {
  std::string out;
  for (const auto& s : arr) {
    if (!out.empty()) out += "; ";
    out += s.get<std::string>();
  }
  return out;
}

template <CoefficientField F>
RunReport verify_document(const Json& doc, F field) {
  std::vector<std::string> base_vars = field_of(doc, "base_vars").get<std::vector<std::string>>();
  auto order = doc.value("order", std::string("grevlex")) == "lex" ? MonomialOrder::lex() : MonomialOrder::grevlex();
  auto ring = make_ring(std::move(field), base_vars, order);
  auto list = [&](const std::string& key, const RingPtr<F>& R) {
    return parse_polynomial_list(R, join(field_of(doc, key)));
  };
  RingPresentation<F> base(ring, list("base_relations", ring));
  auto A = forcing_presentation(base, list("f", ring), parse_polynomial(ring, field_of(doc, "h").get<std::string>()));
  if (doc.contains("vars") && doc.at("vars").get<std::vector<std::string>>() != A.ring()->names()) {
    throw ParseError("certificate variables do not match the rebuilt forcing presentation", 0, 0);
  }
  ParameterSystem<F> params{list("params", ring)};
  VanishingCertificate<F> cert;
  cert.k = field_of(doc, "k").get<unsigned>();
  for (const auto& g : field_of(doc, "cofactors_G")) cert.G.push_back(parse_polynomial(A.ring(), g.get<std::string>()));
  for (const auto& h : field_of(doc, "cofactors_H")) cert.H.push_back(parse_polynomial(A.ring(), h.get<std::string>()));
  RunReport r;
  r.body["command"] = "verify";
  r.body["tool_version"] = kToolVersion;
  r.body["inputs"] = doc;
  bool ok = verify_certificate(A, params, cert);
  r.body["verdict"] = ok ? "valid" : "invalid";
  r.body["certificate_verified"] = ok;
  r.summary.push_back(ok ? "certificate re-expands exactly: valid" : "certificate identity does not hold: invalid");
  return r;
}

}  // namespace detail

/// Re-checks a certificate document (as written by paraclass or regular-cert).
/// A full RunReport with a "certificate" member is accepted as well.
inline RunReport cmd_verify(const std::string& document) {
  Json doc;
  try {
    doc = Json::parse(document);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("certificate JSON: ") + e.what(), 0, e.byte);
  }
  if (doc.contains("certificate") && doc.at("certificate").is_object()) doc = doc.at("certificate");
  try {
    const std::string tag = detail::field_of(doc, "field").get<std::string>();
    if (tag == "Q") return detail::verify_document(doc, RationalField{});
    if (tag.rfind("Fp:", 0) == 0) return detail::verify_document(doc, PrimeField(std::stoull(tag.substr(3))));
    throw ParseError("unknown field tag '" + tag + "'", 0, 0);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("certificate JSON: ") + e.what(), 0, 0);
  }
}

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"membership", "paraclass", "regular-cert", "tight",
                                                 "bskoda",     "verify",    "identity"};
  return names;
}

/// Dispatch for every command except verify, plus timing.
inline RunReport run_command(const std::string& command, const ProblemFile& pf, const CommandOptions& opts = {}) {
  auto t0 = std::chrono::steady_clock::now();
  RunReport r;
  if (command == "membership") {
    r = cmd_membership(pf, opts);
  } else if (command == "paraclass") {
    r = cmd_paraclass(pf, opts);
  } else if (command == "regular-cert") {
    r = cmd_regular_cert(pf, opts);
  } else if (command == "tight") {
    r = cmd_tight(pf, opts);
  } else if (command == "bskoda") {
    r = cmd_bskoda(pf, opts);
  } else if (command == "identity") {
    r = cmd_identity(pf, opts);
  } else {
    throw ParseError("unknown command '" + command + "'", 0, 0);
  }
  auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  r.body["timing"] = {{"elapsed_ms", ms}};
  return r;
}

}  // namespace paraclose

#endif  // PARACLOSE_CLI_HPP
