#ifndef CMTOR_CM_HPP
#define CMTOR_CM_HPP

#include <vector>

#include "cmtor/group.hpp"

namespace cmtor {

// Group-theoretic stand-in for a CM field: G with subgroup H and an
// involution tau acting freely on the right coset space H\G.
struct CmDatum {
  GroupTable G;
  Subgroup H;
  int tau = 0;
  CosetSpace cosets;          // H\G
  int g = 0;                  // |H\G| / 2
  std::vector<int> tauOnCosets;  // coset -> coset under right multiplication by tau
};

CmDatum validate_cm_datum(GroupTable G, Subgroup H, int tau);

// One embedding chosen from each conjugate pair: S subset of H\G with
// S and S*tau disjoint and covering.
struct CmType {
  std::vector<int> S;        // sorted coset indices, size g
  std::vector<char> inS;     // size cosets.count
  std::vector<int> Stilde;   // sorted element indices with coset in S
};

CmType validate_cm_type(const CmDatum& D, std::vector<int> cosetIdx);

// All 2^g types, ordered by the choice bitmask over tau-pairs.
std::vector<CmType> enumerate_cm_types(const CmDatum& D);
inline constexpr int kMaxEnumeratePairs = 12;

// true iff the left stabilizer of Stilde equals H exactly
bool is_simple_type(const CmDatum& D, const CmType& S);

// Reflex data: Hprime is the right stabilizer of Stilde and R the image of
// the inverses of Stilde in Hprime\G. `dual` is the validated datum
// (G, Hprime, tau), so reflex-of-reflex is compute_reflex(dual, R).
struct ReflexDatum {
  CmDatum dual;
  CmType R;
  int reflexDegree = 0;  // [G : Hprime]
};

ReflexDatum compute_reflex(const CmDatum& D, const CmType& S);

}  // namespace cmtor

#endif
