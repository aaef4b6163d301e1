#include "cmtor/family.hpp"

#include <string>

#include "cmtor/errors.hpp"
#include "cmtor/numeric.hpp"

namespace cmtor {

FamilyDatum build_family(long long p) {
  if (p < 3 || !is_prime_ll(p)) fail_config("NotOddPrime", "p = " + std::to_string(p));
  if (p > kMaxFamilyPrime)
    fail_resource("TooLarge", "p = " + std::to_string(p) + " exceeds cap " +
                                  std::to_string(kMaxFamilyPrime));

  FamilyDatum out;
  out.p = p;
  GroupTable G = build_cyclotomic_group(p);
  Subgroup H = subgroup_from_indices(G, {});
  const int tau = G.minusOne;
  out.datum = validate_cm_datum(std::move(G), std::move(H), tau);

  std::vector<int> cosetIdx;
  for (long long r = 1; r <= (p - 1) / 2; ++r) {
    int e = out.datum.G.element_by_label(std::to_string(r));
    cosetIdx.push_back(out.datum.cosets.cosetOf[e]);
  }
  out.type = validate_cm_type(out.datum, std::move(cosetIdx));
  return out;
}

FamilyReport family_report(const FamilyDatum& F) {
  FamilyReport out;
  out.p = F.p;
  out.genus = (F.p - 1) / 2;
  out.simple = is_simple_type(F.datum, F.type);

  ReflexDatum X = compute_reflex(F.datum, F.type);
  out.reflexDegree = X.reflexDegree;

  ReflexNormMatrix nm = reflex_norm_matrix(F.datum, X);
  MtInvariants inv = mt_invariants(nm.M, static_cast<int>(out.genus));
  out.rank = inv.rank;
  if (out.rank != (F.p + 1) / 2)
    fail_invariant("RankMismatch", "rank " + std::to_string(out.rank) + " != (p+1)/2 for p = " +
                                       std::to_string(F.p));
  out.orderF = inv.orderF;
  out.twoTorsionDegree = z_ll(F.p);
  out.growthRatio = make_q(pow_z(2, static_cast<unsigned long>((F.p + 1) / 2)), z_ll(F.p));
  return out;
}

}  // namespace cmtor
