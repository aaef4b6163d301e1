#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <string>

#include "cmtor/cm.hpp"
#include "cmtor/config.hpp"
#include "cmtor/errors.hpp"

using namespace cmtor;

namespace {

const std::string kFixtures = CMTOR_FIXTURES_DIR;

bool throws_named(const std::function<void()>& fn, ErrorKind kind, const std::string& name) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == kind && e.name() == name;
  }
  return false;
}

CmDatum unit_datum(long long m) {
  GroupTable G = build_cyclotomic_group(m);
  Subgroup H = subgroup_from_indices(G, {});
  const int tau = G.minusOne;
  return validate_cm_datum(std::move(G), std::move(H), tau);
}

}  // namespace

TEST_CASE("datum validation") {
  SUBCASE("tau must be an involution") {
    GroupTable G = build_cyclotomic_group(5);
    Subgroup H = subgroup_from_indices(G, {});
    int two = G.element_by_label("2");  // order 4
    CHECK(throws_named([&] { validate_cm_datum(std::move(G), std::move(H), two); },
                       ErrorKind::Config, "TauNotInvolution"));
  }
  SUBCASE("identity tau is rejected") {
    GroupTable G = build_cyclotomic_group(5);
    Subgroup H = subgroup_from_indices(G, {});
    int one = G.identity;
    CHECK(throws_named([&] { validate_cm_datum(std::move(G), std::move(H), one); },
                       ErrorKind::Config, "TauNotInvolution"));
  }
  SUBCASE("tau inside H fixes the identity coset") {
    GroupTable G = build_cyclotomic_group(8);
    Subgroup H = subgroup_from_labels(G, {"1", "7"});
    int tau = G.element_by_label("7");
    CHECK(throws_named([&] { validate_cm_datum(std::move(G), std::move(H), tau); },
                       ErrorKind::Config, "TauFixesACoset"));
  }
  SUBCASE("odd coset count cannot carry a free involution") {
    GroupTable G = build_cyclotomic_group(7);  // order 6, three cosets of {1,6}
    Subgroup H = subgroup_from_labels(G, {"1", "6"});
    int tau = G.element_by_label("6");
    CHECK(throws_named([&] { validate_cm_datum(std::move(G), std::move(H), tau); },
                       ErrorKind::Config, "OddCosetCount"));
  }
  SUBCASE("valid quartic datum") {
    CmDatum D = unit_datum(5);
    CHECK(D.g == 2);
    CHECK(D.cosets.count == 4);
    for (int c = 0; c < D.cosets.count; ++c) {
      CHECK(D.tauOnCosets[c] != c);
      CHECK(D.tauOnCosets[D.tauOnCosets[c]] == c);
    }
  }
}

TEST_CASE("type validation") {
  CmDatum D = unit_datum(5);
  int c1 = D.cosets.cosetOf[D.G.element_by_label("1")];
  int c2 = D.cosets.cosetOf[D.G.element_by_label("2")];
  int c4 = D.cosets.cosetOf[D.G.element_by_label("4")];

  CmType S = validate_cm_type(D, {c1, c2});
  CHECK(S.S.size() == 2);
  CHECK(S.Stilde.size() == 2);
  CHECK(S.inS[c1]);
  CHECK_FALSE(S.inS[c4]);

  // 4 = 1*tau, so {1, 4} meets its own conjugate
  CHECK(throws_named([&] { validate_cm_type(D, {c1, c4}); }, ErrorKind::Config,
                     "NotDisjointFromConjugate"));
  CHECK(throws_named([&] { validate_cm_type(D, {c1}); }, ErrorKind::Config, "NotCovering"));
  CHECK(throws_named([&] { validate_cm_type(D, {c1, 99}); }, ErrorKind::Config, "UnknownLabel"));
}

TEST_CASE("type enumeration") {
  for (long long m : {5, 8, 13}) {
    CmDatum D = unit_datum(m);
    std::vector<CmType> types = enumerate_cm_types(D);
    CHECK(types.size() == (size_t{1} << D.g));
    // all distinct and all valid by construction
    for (size_t i = 0; i < types.size(); ++i)
      for (size_t j = i + 1; j < types.size(); ++j) CHECK(types[i].S != types[j].S);
  }
  // 2^g blows past the enumeration cap once g > 12
  CmDatum big = unit_datum(29);  // g = 14
  CHECK(throws_named([&] { enumerate_cm_types(big); }, ErrorKind::Resource, "TooLarge"));
}

TEST_CASE("simplicity of types") {
  // residues 1,2 mod 5: nothing but 1 stabilizes the pair from the left
  CmDatum D5 = unit_datum(5);
  std::vector<CmType> t5 = enumerate_cm_types(D5);
  int simple5 = 0;
  for (const CmType& S : t5) simple5 += is_simple_type(D5, S) ? 1 : 0;
  CHECK(simple5 == 4);  // every quartic type over a cyclic C4 group is primitive

  // (Z/8)^x and (Z/12)^x are elementary abelian: each type is stabilized by
  // its own defining reflection, so none is simple
  for (long long m : {8, 12}) {
    CmDatum D = unit_datum(m);
    for (const CmType& S : enumerate_cm_types(D)) CHECK_FALSE(is_simple_type(D, S));
  }
}

TEST_CASE("reflex of the quartic fixtures") {
  ConfigStore c4 = load_config_file(kFixtures + "/quartic_c4.cfg");
  CmBundle bc4 = cm_from_block(c4.require("cm", "c4type"), c4);
  CHECK(bc4.datum.g == 2);
  CHECK(is_simple_type(bc4.datum, bc4.type));
  ReflexDatum xc4 = compute_reflex(bc4.datum, bc4.type);
  CHECK(xc4.reflexDegree == 4);

  ConfigStore d4 = load_config_file(kFixtures + "/quartic_d4.cfg");
  CmBundle bd4 = cm_from_block(d4.require("cm", "d4type"), d4);
  CHECK(bd4.datum.g == 2);
  CHECK(bd4.datum.G.order == 8);
  CHECK(is_simple_type(bd4.datum, bd4.type));
  ReflexDatum xd4 = compute_reflex(bd4.datum, bd4.type);
  CHECK(xd4.reflexDegree == 4);
  CHECK(xd4.R.S.size() == 2);
}

TEST_CASE("double reflex recovers a simple type") {
  // the second dual of a primitive type must be the type itself: same
  // subgroup, same embedding set
  std::vector<std::pair<CmDatum, CmType>> cases;
  for (long long m : {5, 7, 9, 11, 13}) {
    CmDatum D = unit_datum(m);
    for (const CmType& S : enumerate_cm_types(D))
      if (is_simple_type(D, S)) cases.emplace_back(unit_datum(m), S);
  }
  {
    ConfigStore d4 = load_config_file(kFixtures + "/quartic_d4.cfg");
    CmBundle b = cm_from_block(d4.require("cm", "d4type"), d4);
    cases.emplace_back(std::move(b.datum), std::move(b.type));
  }
  CHECK(cases.size() > 10);

  for (const auto& [D, S] : cases) {
    ReflexDatum X = compute_reflex(D, S);
    ReflexDatum XX = compute_reflex(X.dual, X.R);
    CHECK(XX.dual.H.members == D.H.members);
    CHECK(XX.reflexDegree == D.cosets.count);
    CHECK(XX.R.Stilde == S.Stilde);
  }
}

TEST_CASE("double reflex strictly grows for induced types") {
  // every type over an elementary abelian group is induced from a proper
  // subfield, so the second dual lives over a strictly larger subgroup
  for (long long m : {8, 12}) {
    CmDatum D = unit_datum(m);
    for (const CmType& S : enumerate_cm_types(D)) {
      ReflexDatum X = compute_reflex(D, S);
      ReflexDatum XX = compute_reflex(X.dual, X.R);
      CHECK(XX.dual.H.members.size() > D.H.members.size());
    }
  }
}
