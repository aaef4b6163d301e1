#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <string>

#include "cmtor/errors.hpp"
#include "cmtor/family.hpp"
#include "cmtor/numeric.hpp"

using namespace cmtor;

namespace {

bool throws_named(const std::function<void()>& fn, ErrorKind kind, const std::string& name) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == kind && e.name() == name;
  }
  return false;
}

}  // namespace

TEST_CASE("family member structure") {
  FamilyDatum F = build_family(5);
  CHECK(F.p == 5);
  CHECK(F.datum.G.order == 4);
  CHECK(F.datum.g == 2);
  CHECK(F.type.S.size() == 2);
  // the type picks the residues below p/2
  for (long long r = 1; r <= 2; ++r) {
    int e = F.datum.G.element_by_label(std::to_string(r));
    CHECK(F.type.inS[F.datum.cosets.cosetOf[e]]);
  }
}

TEST_CASE("family reports for small primes") {
  struct Golden {
    long long p;
    int rank;
    long long orderF;
    const char* ratio;
  };
  // kernel orders start to move at p = 11; rank always (p+1)/2
  const Golden golden[] = {
      {3, 2, 1, "4/3"},   {5, 3, 1, "8/5"},    {7, 4, 1, "16/7"},
      {11, 6, 3, "64/11"}, {13, 7, 5, "128/13"},
  };
  for (const Golden& g : golden) {
    CAPTURE(g.p);
    FamilyReport r = family_report(build_family(g.p));
    CHECK(r.p == g.p);
    CHECK(r.genus == (g.p - 1) / 2);
    CHECK(r.rank == g.rank);
    CHECK(r.rank == r.genus + 1);
    CHECK(r.simple);
    CHECK(r.reflexDegree == g.p - 1);
    CHECK(r.orderF == z_ll(g.orderF));
    CHECK(r.twoTorsionDegree == z_ll(g.p));
    CHECK(q_to_string(r.growthRatio) == g.ratio);
  }
}

TEST_CASE("rank identity holds through the cap") {
  for (long long p : {17, 19, 23, 29, 31, 37, 41, 43, 47}) {
    CAPTURE(p);
    FamilyReport r = family_report(build_family(p));  // throws RankMismatch on failure
    CHECK(r.rank == (p + 1) / 2);
    CHECK(r.orderF >= 1);
  }
}

TEST_CASE("input validation") {
  CHECK(throws_named([] { build_family(1); }, ErrorKind::Config, "NotOddPrime"));
  CHECK(throws_named([] { build_family(2); }, ErrorKind::Config, "NotOddPrime"));
  CHECK(throws_named([] { build_family(4); }, ErrorKind::Config, "NotOddPrime"));
  CHECK(throws_named([] { build_family(-7); }, ErrorKind::Config, "NotOddPrime"));
  CHECK(throws_named([] { build_family(49); }, ErrorKind::Config, "NotOddPrime"));
  CHECK(throws_named([] { build_family(53); }, ErrorKind::Resource, "TooLarge"));
}
