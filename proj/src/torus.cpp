#include "cmtor/torus.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <string>
#include <thread>

#include "cmtor/errors.hpp"
#include "cmtor/numeric.hpp"

namespace cmtor {

namespace {

std::vector<long long> poly_mod_ell(const std::vector<long long>& p, long long ell) {
  std::vector<long long> out(p.size());
  for (size_t i = 0; i < p.size(); ++i) out[i] = mod_pos(p[i], ell);
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

// gcd in F_ell[x]; both inputs reduced mod ell
std::vector<long long> poly_gcd_mod(std::vector<long long> a, std::vector<long long> b,
                                    long long ell) {
  while (!b.empty()) {
    // a mod b
    long long lead = b.back();
    long long leadInv = mod_inverse(lead, ell);
    while (a.size() >= b.size()) {
      long long q = (a.back() * leadInv) % ell;
      size_t shift = a.size() - b.size();
      for (size_t i = 0; i < b.size(); ++i)
        a[shift + i] = mod_pos(a[shift + i] - q * b[i], ell);
      while (!a.empty() && a.back() == 0) a.pop_back();
    }
    std::swap(a, b);
  }
  return a;
}

// reduce a polynomial of degree < 2*deg-1 mod (f, M) using the precomputed rows
RingElt reduce_poly(const FiniteRingDatum& R, const std::vector<long long>& p) {
  RingElt out(R.deg, 0);
  for (int i = 0; i < R.deg && i < static_cast<int>(p.size()); ++i) out[i] = mod_pos(p[i], R.M);
  for (int k = R.deg; k < static_cast<int>(p.size()); ++k) {
    long long c = mod_pos(p[k], R.M);
    if (c == 0) continue;
    const auto& row = R.powRows[k - R.deg];
    for (int i = 0; i < R.deg; ++i) out[i] = (out[i] + c * row[i]) % R.M;
  }
  return out;
}

RingElt raw_mul(const FiniteRingDatum& R, const RingElt& u, const RingElt& v) {
  std::vector<long long> conv(2 * R.deg - 1, 0);
  for (int i = 0; i < R.deg; ++i) {
    if (u[i] == 0) continue;
    for (int j = 0; j < R.deg; ++j) conv[i + j] = (conv[i + j] + u[i] * v[j]) % R.M;
  }
  return reduce_poly(R, conv);
}

}  // namespace

FiniteRingDatum make_ring(long long ell, int N, std::vector<long long> f,
                          std::vector<long long> tau) {
  if (!is_prime_ll(ell)) fail_config("NotPrime", "ell = " + std::to_string(ell));
  if (N < 1) fail_config("BadTruncation", "N must be >= 1");
  while (!f.empty() && f.back() == 0) f.pop_back();
  if (f.size() < 3 || (f.size() - 1) % 2 != 0)
    fail_config("NotMonic", "modulus must have even degree >= 2");
  if (f.back() != 1) fail_config("NotMonic", "modulus must be monic");

  FiniteRingDatum R;
  R.ell = ell;
  R.N = N;
  R.deg = static_cast<int>(f.size()) - 1;

  mpz_class sz = pow_z(ell, static_cast<unsigned long>(N) * R.deg);
  if (sz > z_ll(kMaxRingSize))
    fail_resource("TooLarge", "ring size " + sz.get_str() + " exceeds cap " +
                                  std::to_string(kMaxRingSize));
  R.size = sz.get_si();
  R.M = pow_ll(ell, N);

  R.f.resize(R.deg + 1);
  for (int i = 0; i <= R.deg; ++i) R.f[i] = mod_pos(f[i], R.M);
  R.f[R.deg] = 1;

  // x^(deg+k) mod f for k = 0..deg-2
  R.powRows.assign(R.deg - 1, std::vector<long long>(R.deg, 0));
  {
    RingElt cur(R.deg, 0);  // x^deg = -(f - x^deg)
    for (int i = 0; i < R.deg; ++i) cur[i] = mod_pos(-R.f[i], R.M);
    for (int k = 0; k < R.deg - 1; ++k) {
      R.powRows[k] = cur;
      if (k + 1 < R.deg - 1) {
        // multiply by x
        RingElt next(R.deg, 0);
        long long top = cur[R.deg - 1];
        for (int i = 1; i < R.deg; ++i) next[i] = cur[i - 1];
        if (top != 0)
          for (int i = 0; i < R.deg; ++i)
            next[i] = mod_pos(next[i] + top * mod_pos(-R.f[i], R.M), R.M);
        cur = next;
      }
    }
  }

  // tau as the linear map sending x^j to t(x)^j
  RingElt tImage(R.deg, 0);
  for (int i = 0; i < static_cast<int>(tau.size()); ++i) {
    if (i < R.deg) {
      tImage[i] = mod_pos(tau[i], R.M);
    } else if (mod_pos(tau[i], R.M) != 0) {
      std::vector<long long> full(tau.size());
      for (size_t k = 0; k < tau.size(); ++k) full[k] = mod_pos(tau[k], R.M);
      tImage = reduce_poly(R, full);
      break;
    }
  }
  R.t = tImage;
  R.tauMat.assign(R.deg, RingElt(R.deg, 0));
  {
    RingElt cur(R.deg, 0);
    cur[0] = 1;
    for (int j = 0; j < R.deg; ++j) {
      R.tauMat[j] = cur;
      if (j + 1 < R.deg) cur = raw_mul(R, cur, tImage);
    }
  }

  // substitution must respect the quotient: f(t(x)) = 0
  {
    RingElt acc(R.deg, 0);
    RingElt cur(R.deg, 0);
    cur[0] = 1;
    for (int j = 0; j <= R.deg; ++j) {
      for (int i = 0; i < R.deg; ++i) acc[i] = (acc[i] + R.f[j] * cur[i]) % R.M;
      if (j < R.deg) cur = raw_mul(R, cur, tImage);
    }
    if (!std::all_of(acc.begin(), acc.end(), [](long long v) { return v == 0; }))
      fail_config("TauNotRingMap", "f(t(x)) != 0 in the quotient");
  }
  // and be an involution: t(t(x)) = x
  {
    RingElt ttx = ring_tau(R, tImage);
    RingElt x(R.deg, 0);
    if (R.deg > 1) x[1] = 1;
    if (ttx != x) fail_config("TauNotInvolution", "t(t(x)) != x in the quotient");
  }

  R.fModEll = poly_mod_ell(R.f, ell);
  return R;
}

RingElt ring_element(const FiniteRingDatum& R, long long index) {
  RingElt u(R.deg);
  for (int j = 0; j < R.deg; ++j) {
    u[j] = index % R.M;
    index /= R.M;
  }
  return u;
}

RingElt ring_mul(const FiniteRingDatum& R, const RingElt& u, const RingElt& v) {
  return raw_mul(R, u, v);
}

RingElt ring_tau(const FiniteRingDatum& R, const RingElt& u) {
  RingElt out(R.deg, 0);
  for (int j = 0; j < R.deg; ++j) {
    if (u[j] == 0) continue;
    const auto& col = R.tauMat[j];
    for (int i = 0; i < R.deg; ++i) out[i] = (out[i] + u[j] * col[i]) % R.M;
  }
  return out;
}

bool ring_is_unit(const FiniteRingDatum& R, const RingElt& u) {
  // invertible mod ell^N iff invertible mod ell iff coprime to f in F_ell[x]
  std::vector<long long> p = poly_mod_ell(u, R.ell);
  if (p.empty()) return false;
  std::vector<long long> gcd = poly_gcd_mod(R.fModEll, p, R.ell);
  return gcd.size() == 1;
}

bool ring_is_one(const RingElt& u) {
  if (u[0] != 1) return false;
  return std::all_of(u.begin() + 1, u.end(), [](long long v) { return v == 0; });
}

bool ring_is_unit_scalar(const FiniteRingDatum& R, const RingElt& u) {
  if (u[0] % R.ell == 0) return false;
  return std::all_of(u.begin() + 1, u.end(), [](long long v) { return v == 0; });
}

namespace {

int enumeration_threads() {
  const char* env = std::getenv("CMTOR_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 1 || v > 64)
    fail_config("BadThreadCount",
                std::string("CMTOR_THREADS = '") + env + "', need an integer in 1..64");
  return static_cast<int>(v);
}

// full scans only; element lookup is random access, so contiguous index
// chunks are independent
template <typename Pred>
long long count_elements(const FiniteRingDatum& R, Pred pred) {
  const int threads = enumeration_threads();
  if (threads == 1 || R.size < 4096) {
    long long count = 0;
    for (long long i = 0; i < R.size; ++i)
      if (pred(ring_element(R, i))) ++count;
    return count;
  }
  std::vector<long long> partial(threads, 0);
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&R, &partial, &pred, t, threads] {
      const long long lo = R.size * t / threads;
      const long long hi = R.size * (t + 1) / threads;
      long long c = 0;
      for (long long i = lo; i < hi; ++i)
        if (pred(ring_element(R, i))) ++c;
      partial[t] = c;
    });
  }
  for (auto& th : pool) th.join();
  long long total = 0;
  for (long long c : partial) total += c;
  return total;
}

}  // namespace

long long enumerate_units(const FiniteRingDatum& R) {
  return count_elements(R, [&R](const RingElt& u) { return ring_is_unit(R, u); });
}

long long enumerate_hodge_points(const FiniteRingDatum& R) {
  return count_elements(
      R, [&R](const RingElt& u) { return ring_is_one(ring_mul(R, u, ring_tau(R, u))); });
}

long long enumerate_mt_points(const FiniteRingDatum& R) {
  return count_elements(R, [&R](const RingElt& u) {
    return ring_is_unit_scalar(R, ring_mul(R, u, ring_tau(R, u)));
  });
}

PsiAnalysis psi_image_analysis(const FiniteRingDatum& R) {
  PsiAnalysis out;

  std::set<long long> squares;
  for (long long m = 0; m < R.M; ++m)
    if (m % R.ell != 0) {
      ++out.scalarOrder;
      squares.insert((m * m) % R.M);
      if ((m * m) % R.M == 1) ++out.kernelOrder;
    }

  out.squareCriterion = true;
  for (long long i = 0; i < R.size; ++i) {
    RingElt u = ring_element(R, i);
    RingElt norm = ring_mul(R, u, ring_tau(R, u));
    if (ring_is_one(norm)) ++out.hodgeOrder;
    if (ring_is_unit_scalar(R, norm)) {
      ++out.mtOrder;
      if (!squares.count(norm[0])) out.squareCriterion = false;
    }
  }

  long long num = out.hodgeOrder * out.scalarOrder;
  if (num % out.kernelOrder != 0)
    fail_invariant("InconsistentIndex", "kernel order does not divide hodge*scalar");
  out.imPsiOrder = num / out.kernelOrder;

  if (out.mtOrder % out.imPsiOrder != 0)
    fail_invariant("InconsistentIndex", "image order does not divide mt order");
  out.indexImPsi = out.mtOrder / out.imPsiOrder;

  if (R.ell != 2) {
    if (out.indexImPsi != 1 && out.indexImPsi != 2)
      fail_invariant("InconsistentIndex",
                     "index " + std::to_string(out.indexImPsi) + " outside {1,2}");
    if ((out.indexImPsi == 1) != out.squareCriterion)
      fail_invariant("InconsistentIndex", "index-1 and square criterion disagree");
  }
  return out;
}

namespace {

struct FiltrationCounts {
  std::vector<long long> levels;  // |C(k)|, k = 0..kMax+1
};

// valuation in half-integer units: w(x) = min(2*v(a-1), 2*v(b) + v_ell(d));
// a zero residue counts as valuation >= N (capped high)
FiltrationCounts filtration_counts(long long ell, int N, long long d, int kMax, int vd) {
  const long long M = pow_ll(ell, N);
  const long long dm = mod_pos(d, M);
  const int vCap = 4 * N;  // larger than any tested threshold

  auto vEll = [&](long long x) {
    if (x == 0) return vCap;
    int v = 0;
    while (x % ell == 0) {
      x /= ell;
      ++v;
    }
    return v;
  };

  FiltrationCounts out;
  out.levels.assign(kMax + 2, 0);
  for (long long a = 0; a < M; ++a) {
    long long aa = (a * a) % M;
    for (long long b = 0; b < M; ++b) {
      if (mod_pos(aa - dm * b % M * b % M, M) != 1) continue;
      int w = std::min(2 * vEll(mod_pos(a - 1, M)), 2 * vEll(b) + vd);
      for (int k = 0; k <= kMax + 1; ++k)
        if (w >= 2 * k) ++out.levels[k];
    }
  }
  return out;
}

std::vector<long long> quotients_of(const FiltrationCounts& c, int kMax) {
  std::vector<long long> q;
  for (int k = 0; k <= kMax; ++k) {
    if (c.levels[k + 1] == 0 || c.levels[k] % c.levels[k + 1] != 0)
      fail_invariant("InconsistentIndex", "filtration level sizes are not nested subgroups");
    q.push_back(c.levels[k] / c.levels[k + 1]);
  }
  return q;
}

}  // namespace

FiltrationResult filtration_orders(const FiltrationSpec& spec) {
  if (!is_prime_ll(spec.ell)) fail_config("NotPrime", "ell = " + std::to_string(spec.ell));
  if (spec.N < 2) fail_config("BadTruncation", "N must be >= 2");
  if (spec.kMax < 0 || spec.kMax > spec.N - 2)
    fail_config("KMaxExceedsTruncation", "kMax must be in 0..N-2");

  // classify d: unit square -> split algebra (rejected), unit nonsquare ->
  // unramified field, valuation exactly 1 -> ramified field
  bool ramified;
  if (spec.d == 0) fail_config("BadQuadraticParameter", "d must be nonzero");
  long long dAbsVal = spec.d;
  int vd = 0;
  while (dAbsVal % spec.ell == 0) {
    dAbsVal /= spec.ell;
    ++vd;
  }
  if (vd == 0) {
    bool isSquare = false;
    if (spec.ell == 2) {
      isSquare = mod_pos(spec.d, 8) == 1;
    } else {
      for (long long s = 0; s < spec.ell && !isSquare; ++s)
        if ((s * s) % spec.ell == mod_pos(spec.d, spec.ell)) isSquare = true;
    }
    if (isSquare)
      fail_config("BadQuadraticParameter",
                  "d is a square unit: the algebra splits and is not a field");
    ramified = (spec.ell == 2 && mod_pos(spec.d, 8) != 5);
  } else if (vd == 1) {
    ramified = true;
  } else {
    fail_config("BadQuadraticParameter", "d must be squarefree (v_ell(d) <= 1)");
  }

  const mpz_class pairsNext = pow_z(spec.ell, 2ul * (spec.N + 1));
  if (pairsNext > z_ll(4 * kMaxRingSize))
    fail_resource("TooLarge", "truncation window " + pairsNext.get_str() + " too large");

  FiltrationCounts atN = filtration_counts(spec.ell, spec.N, spec.d, spec.kMax, vd);
  FiltrationCounts atN1 = filtration_counts(spec.ell, spec.N + 1, spec.d, spec.kMax, vd);

  FiltrationResult out;
  out.ramified = ramified;
  out.levelSizes = atN.levels;
  out.quotientOrders = quotients_of(atN, spec.kMax);
  std::vector<long long> qNext = quotients_of(atN1, spec.kMax);
  if (out.quotientOrders != qNext)
    fail_invariant("UnstableTruncation",
                   "quotient orders differ between N and N+1 - increase N");

  out.equalitiesAsserted = (spec.ell != 2);
  if (out.equalitiesAsserted) {
    const long long expect0 = ramified ? 2 * spec.ell : spec.ell + 1;
    if (out.quotientOrders[0] != expect0)
      fail_invariant("UnexpectedQuotient",
                     "level-0 quotient " + std::to_string(out.quotientOrders[0]) + " != " +
                         std::to_string(expect0));
    for (int k = 1; k <= spec.kMax; ++k)
      if (out.quotientOrders[k] != spec.ell)
        fail_invariant("UnexpectedQuotient",
                       "level-" + std::to_string(k) + " quotient " +
                           std::to_string(out.quotientOrders[k]) + " != ell");
  } else {
    for (long long q : out.quotientOrders)
      if (q > 4)
        fail_invariant("UnexpectedQuotient",
                       "quotient " + std::to_string(q) + " exceeds 4 at ell = 2");
  }
  return out;
}

namespace {

struct Mat2 {
  long long a, b, c, d;  // [[a, b], [c, d]]
};

Mat2 mat_mul2(const Mat2& x, const Mat2& y, long long M) {
  return {(x.a * y.a + x.b * y.c) % M, (x.a * y.b + x.b * y.d) % M,
          (x.c * y.a + x.d * y.c) % M, (x.c * y.b + x.d * y.d) % M};
}

// membership in the plane spanned by I and [[0, d], [1, c]]:
// x12 = d*x21 and x11 + c*x21 = x22
bool in_plane(const Mat2& m, long long c, long long d, long long M) {
  if (m.b != (d * m.c) % M) return false;
  return (m.a + c * m.c) % M == m.d;
}

}  // namespace

CartanResult cartan_and_normalizer(const CartanDatum& datum) {
  if (!is_prime_ll(datum.ell)) fail_config("NotPrime", "ell = " + std::to_string(datum.ell));
  if (datum.n < 1) fail_config("BadTruncation", "n must be >= 1");
  const mpz_class level = pow_z(datum.ell, static_cast<unsigned long>(datum.n));
  if (level > z_ll(kMaxCartanLevel))
    fail_resource("TooLarge", "ell^n = " + level.get_str() + " exceeds cap " +
                                  std::to_string(kMaxCartanLevel));
  const long long disc = datum.c * datum.c + 4 * datum.d;
  if (disc == 0) fail_config("BadQuadraticParameter", "c^2 + 4d must be nonzero");

  const long long M = level.get_si();
  const long long c = mod_pos(datum.c, M);
  const long long d = mod_pos(datum.d, M);
  const Mat2 W{0, d, 1, c};

  CartanResult out;
  out.discCoprimeToEll = (datum.ell != 2) && (mod_pos(disc, datum.ell) != 0);

  // Cartan order counted directly over the parametrization (a, b)
  for (long long a = 0; a < M; ++a)
    for (long long b = 0; b < M; ++b) {
      long long det = mod_pos(a * (a + b * c) % M - b * b % M * d, M);
      if (det % datum.ell != 0) ++out.cartanOrder;
    }

  // full pass over GL2(Z/M): conjugation fixes the plane iff g W g^-1 lies
  // in it (the identity component is always preserved)
  for (long long a = 0; a < M; ++a)
    for (long long b = 0; b < M; ++b)
      for (long long cc = 0; cc < M; ++cc)
        for (long long dd = 0; dd < M; ++dd) {
          long long det = mod_pos(a * dd - b * cc, M);
          if (det % datum.ell == 0) continue;
          ++out.glOrder;
          long long detInv = mod_inverse(det, M);
          Mat2 g{a, b, cc, dd};
          Mat2 gInv{(dd * detInv) % M, mod_pos(-b * detInv, M), mod_pos(-cc * detInv, M),
                    (a * detInv) % M};
          if (in_plane(mat_mul2(mat_mul2(g, W, M), gInv, M), c, d, M)) ++out.normalizerOrder;
        }

  if (out.normalizerOrder % out.cartanOrder != 0)
    fail_invariant("InconsistentIndex", "Cartan order does not divide normalizer order");
  out.index = out.normalizerOrder / out.cartanOrder;
  out.indexIsTwo = (out.index == 2);

  // witness [[1, c], [0, -1]]
  {
    Mat2 w{1, c, 0, mod_pos(-1, M)};
    long long det = mod_pos(w.a * w.d - w.b * w.c, M);
    if (det % datum.ell == 0) fail_invariant("InconsistentIndex", "witness not invertible");
    long long detInv = mod_inverse(det, M);
    Mat2 wInv{(w.d * detInv) % M, mod_pos(-w.b * detInv, M), mod_pos(-w.c * detInv, M),
              (w.a * detInv) % M};
    out.witnessInNormalizer = in_plane(mat_mul2(mat_mul2(w, W, M), wInv, M), c, d, M);
    if (!out.witnessInNormalizer)
      fail_invariant("WitnessRejected", "witness does not stabilize the plane");
    out.witnessOutsideCartan = !in_plane(w, c, d, M);
  }
  return out;
}

}  // namespace cmtor
