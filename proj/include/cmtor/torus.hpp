#ifndef CMTOR_TORUS_HPP
#define CMTOR_TORUS_HPP

#include <gmpxx.h>

#include <vector>

namespace cmtor {

inline constexpr long long kMaxRingSize = 10000000;  // element cap per enumeration

// Truncated quotient ring (Z/ell^N)[x]/(f) with an involution given by
// polynomial substitution x -> t(x). Elements are coefficient vectors of
// length deg f with entries in [0, ell^N).
struct FiniteRingDatum {
  long long ell = 3;
  int N = 1;
  std::vector<long long> f;    // monic, low-to-high coefficients, even degree
  std::vector<long long> t;    // image of x under tau, reduced mod (f, ell^N)

  // derived
  int deg = 0;
  long long M = 0;                                // ell^N
  long long size = 0;                             // ell^(N*deg)
  std::vector<std::vector<long long>> tauMat;     // tau as a linear map, column j = t^j
  std::vector<std::vector<long long>> powRows;    // x^(deg..2deg-2) mod f
  std::vector<long long> fModEll;
};

FiniteRingDatum make_ring(long long ell, int N, std::vector<long long> f,
                          std::vector<long long> tau);

using RingElt = std::vector<long long>;

RingElt ring_element(const FiniteRingDatum& R, long long index);  // deterministic order
RingElt ring_mul(const FiniteRingDatum& R, const RingElt& u, const RingElt& v);
RingElt ring_tau(const FiniteRingDatum& R, const RingElt& u);
bool ring_is_unit(const FiniteRingDatum& R, const RingElt& u);
bool ring_is_one(const RingElt& u);
// constant polynomial with unit constant term
bool ring_is_unit_scalar(const FiniteRingDatum& R, const RingElt& u);

long long enumerate_units(const FiniteRingDatum& R);
long long enumerate_hodge_points(const FiniteRingDatum& R);  // u * tau(u) = 1
long long enumerate_mt_points(const FiniteRingDatum& R);     // u * tau(u) a unit scalar

struct PsiAnalysis {
  long long hodgeOrder = 0;
  long long scalarOrder = 0;   // |(Z/ell^N)^x|
  long long kernelOrder = 0;   // scalars with square 1
  long long imPsiOrder = 0;    // hodge * scalar / kernel
  long long mtOrder = 0;
  long long indexImPsi = 0;    // mt / imPsi
  bool squareCriterion = false;  // every mt point's norm is a square scalar
};

// For odd ell the index is checked to be 1 or 2 with index 1 exactly when
// the square criterion holds; a violation is an invariant failure.
PsiAnalysis psi_image_analysis(const FiniteRingDatum& R);

// Norm-one units a + b*sqrt(d) of a quadratic extension of Q_ell, truncated
// mod ell^N. d must be a nonresidue unit (unramified case) or ell times a
// unit (ramified case).
struct FiltrationSpec {
  long long ell = 3;
  int N = 5;
  long long d = -1;
  int kMax = 2;  // <= N-2
};

struct FiltrationResult {
  bool ramified = false;
  std::vector<long long> levelSizes;      // |C(k)| for k = 0..kMax+1 at truncation N
  std::vector<long long> quotientOrders;  // |C(k)/C(k+1)| for k = 0..kMax
  bool equalitiesAsserted = false;        // true for odd ell
};

// Counts are recomputed at truncation N+1; any disagreement in the quotient
// orders raises UnstableTruncation. For odd ell the expected orders
// (ell+1 or 2*ell at level 0, then ell) are enforced; for ell = 2 only the
// upper bound 4 is checked.
FiltrationResult filtration_orders(const FiltrationSpec& spec);

// Units of the quadratic order Z[w], w^2 = c*w + d, embedded in 2x2 matrices
// over Z/ell^n as [[a, b*d],[b, a+b*c]]; the normalizer is computed as the
// stabilizer, under conjugation, of the plane spanned by the identity and
// the matrix of w.
struct CartanDatum {
  long long c = 0;
  long long d = -1;
  long long ell = 3;
  int n = 1;
};

struct CartanResult {
  long long glOrder = 0;
  long long cartanOrder = 0;
  long long normalizerOrder = 0;
  long long index = 0;
  bool indexIsTwo = false;
  bool witnessInNormalizer = false;    // [[1, c], [0, -1]]
  bool witnessOutsideCartan = false;
  bool discCoprimeToEll = false;       // ell odd and ell does not divide c^2+4d
};

CartanResult cartan_and_normalizer(const CartanDatum& datum);
inline constexpr long long kMaxCartanLevel = 49;  // cap on ell^n

}  // namespace cmtor

#endif
