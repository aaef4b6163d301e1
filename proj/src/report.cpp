#include "cmtor/report.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cmtor/errors.hpp"

namespace cmtor {

const std::vector<std::pair<std::string, std::string>>& claim_registry() {
  static const std::vector<std::pair<std::string, std::string>> reg = {
      {"rank-bound", "The rank r of the reflex-norm character matrix is at most g+1."},
      {"kernel-order-bound",
       "The kernel component group F of the reflex-norm surjection has order at most "
       "floor((r+1)^((r+1)/2) / 2^r)."},
      {"reflex-kernel-connected",
       "For elliptic and simple quartic CM types the kernel of the reflex norm is connected, "
       "so |F| = 1."},
      {"hadamard-01-determinant",
       "An n by n matrix with entries in {0,1} has |det| at most "
       "floor((n+1)^((n+1)/2) / 2^n)."},
      {"degree-bounds-large-unramified",
       "If ell is unramified in both fields and ell^2 > 2*g!, the degree of the ell^n-division "
       "field lies between ell^(n*r) / (4*muE*sqrt(g!)) and (5/2)*muE*hK*ell^(n*r)."},
      {"torus-good-reduction-primes",
       "The norm-one torus of a number field extends to a smooth group scheme at every prime "
       "not dividing the field discriminant."},
      {"torus-order-good-reduction",
       "A d-dimensional torus with good reduction has between (1-1/ell)^d * ell^(n*d) and "
       "(1+1/ell)^d * ell^(n*d) points with values in Z/ell^n."},
      {"mt-order-nondegenerate",
       "For a nondegenerate type (r = g+1) the number of Z/ell^n points of the special "
       "Mumford-Tate torus lies between (1-1/ell)^(g+1) * ell^((g+1)n) and "
       "2^g * (1+1/ell)^(g-1) * ell^((g+1)n) for odd ell, with 2-adic endpoints "
       "2^((g+1)n) / 2^(2g+3) and 2^(2g-1) * 2^((g+1)n)."},
      {"index-galois-in-mt",
       "The ell^n Galois image has index at most muE*hK inside the Z/ell^n points of the "
       "special Mumford-Tate torus."},
      {"index-mt-over-galois-stated",
       "The Z/ell^n Mumford-Tate points contain the Galois image with index at most "
       "muStar*[K:E*]*|F|^(2r)."},
      {"index-mt-over-galois-sharper",
       "The containment index is in fact at most muStar*[K:E*]*|F|^r*ell^(r*v_ell(|F|))."},
      {"index-divisibility-unramified",
       "If ell is unramified in E and does not divide |F|, the containment index divides "
       "muStar*[K:E*]*|F|, and divides muStar*|F| when ell is also unramified in K."},
      {"index-divisibility-mod-ell",
       "Under good reduction with ell unramified in E, the mod-ell containment index divides "
       "[K:E*]*|F|, and divides |F| when ell is also unramified in K."},
      {"division-degree-window",
       "The degree of the ell^n-division field lies between the Mumford-Tate order window "
       "divided by the applicable index bound and the window multiplied by muE*hK."},
      {"surface-degree-lower",
       "For a simple abelian surface with r = 3, |F| = 1 and muStar = 1 the ell^n-division "
       "degree is at least (1-1/ell)^3 * ell^(3n) / [K:E*]."},
      {"quadratic-equality",
       "For an elliptic curve with CM, good ordinary reduction and ell unramified in both "
       "fields, the ell^n-division degree equals the Mumford-Tate order exactly."},
      {"ell-adic-absolute-value",
       "ellpart(m) = (v, ell^-v) where v is the exponent of ell in m."},
      {"torus-point-window",
       "The unit count of the truncated quotient ring and its norm-one and unit-scalar-norm "
       "subgroups obey the torus order windows of the matching dimension."},
      {"filtration-level-zero",
       "The level-zero quotient of the norm-one unit filtration has order ell+1 when the "
       "quadratic extension is unramified and 2*ell when it is ramified."},
      {"filtration-higher-levels",
       "Every higher quotient of the norm-one unit filtration has order ell."},
      {"psi-index-dichotomy",
       "For odd ell the unit-scalar-norm group contains the product of the norm-one group and "
       "the scalars with index 1 or 2; the index is 1 exactly when every occurring norm is a "
       "square scalar."},
      {"cartan-normalizer-index",
       "A nonsplit Cartan subgroup of GL2(Z/ell^n) has index 2 in its normalizer, and "
       "[[1,c],[0,-1]] represents the nontrivial coset."},
      {"family-rank",
       "The genus (p-1)/2 cyclotomic family member has Mumford-Tate rank (p+1)/2."},
      {"family-growth-ratio",
       "Along the cyclotomic family the normalized division-degree growth ratio is "
       "2^((p+1)/2) / p."},
      {"family-two-torsion",
       "The 2-division field of the cyclotomic family member has degree p."},
  };
  return reg;
}

const std::string& claim_statement(const std::string& id) {
  for (const auto& [key, text] : claim_registry())
    if (key == id) return text;
  fail_config("UnknownClaim", "no registered claim with id '" + id + "'");
}

void finalize_citations(Report& r) {
  std::set<std::string> ids;
  for (const auto& e : r.entries)
    if (!e.claim.empty()) ids.insert(e.claim);
  r.citations.clear();
  for (const auto& [key, text] : claim_registry())
    if (ids.count(key)) r.citations.emplace_back(key, text);
  for (const auto& id : ids)
    (void)claim_statement(id);  // unknown ids are a config error
}

std::string report_to_json(const Report& r, bool pretty) {
  nlohmann::ordered_json det;
  det["toolVersion"] = r.toolVersion;
  det["command"] = r.command;
  det["inputEcho"] = r.inputEcho;
  det["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : r.entries) {
    nlohmann::ordered_json je;
    je["id"] = e.id;
    je["kind"] = e.kind;
    je["claim"] = e.claim;
    je["applicable"] = e.applicable;
    je["payload"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : e.payload) je["payload"][k] = v;
    det["entries"].push_back(std::move(je));
  }
  det["citations"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.citations) det["citations"][k] = v;

  nlohmann::ordered_json root;
  root["deterministic"] = std::move(det);
  root["timingMs"] = r.timingMs;
  return pretty ? root.dump(2) + "\n" : root.dump();
}

Report report_from_json(const std::string& text) {
  nlohmann::ordered_json root;
  try {
    root = nlohmann::ordered_json::parse(text);
  } catch (const std::exception& ex) {
    fail_config("ConfigParseError", std::string("bad report JSON: ") + ex.what());
  }
  Report r;
  try {
    const auto& det = root.at("deterministic");
    r.toolVersion = det.at("toolVersion").get<std::string>();
    r.command = det.at("command").get<std::string>();
    r.inputEcho = det.at("inputEcho").get<std::string>();
    for (const auto& je : det.at("entries")) {
      BoundEntry e;
      e.id = je.at("id").get<std::string>();
      e.kind = je.at("kind").get<std::string>();
      e.claim = je.at("claim").get<std::string>();
      e.applicable = je.at("applicable").get<bool>();
      for (const auto& [k, v] : je.at("payload").items())
        e.payload.emplace_back(k, v.get<std::string>());
      r.entries.push_back(std::move(e));
    }
    for (const auto& [k, v] : det.at("citations").items())
      r.citations.emplace_back(k, v.get<std::string>());
    r.timingMs = root.at("timingMs").get<long long>();
  } catch (const nlohmann::ordered_json::exception& ex) {
    fail_config("ConfigParseError", std::string("bad report JSON: ") + ex.what());
  }
  return r;
}

std::string report_to_text(const Report& r) {
  std::ostringstream out;
  out << r.toolVersion << "  command: " << r.command << "\n";
  if (!r.inputEcho.empty()) out << "input: " << r.inputEcho << "\n";
  for (const auto& e : r.entries) {
    out << "\n[" << e.id << "] kind=" << e.kind;
    if (!e.applicable) out << " (not applicable)";
    out << "\n";
    for (const auto& [k, v] : e.payload) out << "  " << k << " = " << v << "\n";
    if (!e.claim.empty()) out << "  claim: " << e.claim << "\n";
  }
  if (!r.citations.empty()) {
    out << "\nclaims:\n";
    for (const auto& [k, v] : r.citations) out << "  " << k << ": " << v << "\n";
  }
  out << "\ntiming: " << r.timingMs << " ms\n";
  return out.str();
}

}  // namespace cmtor
