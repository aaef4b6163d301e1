#ifndef CMTOR_FAMILY_HPP
#define CMTOR_FAMILY_HPP

#include <gmpxx.h>

#include "cmtor/cm.hpp"
#include "cmtor/lattice.hpp"

namespace cmtor {

inline constexpr long long kMaxFamilyPrime = 47;

// The degree p-1 member of the cyclotomic family: G = (Z/p)^x, H trivial,
// tau = -1, and the type picks the residues 1..(p-1)/2.
struct FamilyDatum {
  long long p = 0;
  CmDatum datum;
  CmType type;
};

FamilyDatum build_family(long long p);

struct FamilyReport {
  long long p = 0;
  long long genus = 0;          // (p-1)/2
  bool simple = false;
  int reflexDegree = 0;
  int rank = 0;                 // checked to be (p+1)/2
  mpz_class orderF;
  mpz_class twoTorsionDegree;   // degree of the 2-division field: p
  mpq_class growthRatio;        // 2^((p+1)/2) / p
};

FamilyReport family_report(const FamilyDatum& F);

}  // namespace cmtor

#endif
