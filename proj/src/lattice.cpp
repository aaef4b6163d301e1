#include "cmtor/lattice.hpp"

#include <algorithm>
#include <random>

#include "cmtor/errors.hpp"
#include "cmtor/numeric.hpp"

namespace cmtor {

IntMat IntMat::eye(int n) {
  IntMat I(n, n);
  for (int i = 0; i < n; ++i) I.at(i, i) = 1;
  return I;
}

IntMat mat_mul(const IntMat& A, const IntMat& B) {
  IntMat C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      if (A.at(i, k) == 0) continue;
      for (int j = 0; j < B.cols; ++j) C.at(i, j) += A.at(i, k) * B.at(k, j);
    }
  return C;
}

ReflexNormMatrix reflex_norm_matrix(const CmDatum& D, const ReflexDatum& X) {
  const CosetSpace& rows = X.dual.cosets;  // Hprime\G
  const CosetSpace& cols = D.cosets;       // H\G

  ReflexNormMatrix out;
  out.M = IntMat(rows.count, cols.count);
  out.sizeR = static_cast<int>(X.R.S.size());

  for (int j = 0; j < cols.count; ++j) {
    int gRep = cols.reps[j];
    for (int rc : X.R.S) {
      int rRep = rows.reps[rc];
      out.M.at(rows.cosetOf[D.G.op(rRep, gRep)], j) += 1;
    }
  }

  for (int j = 0; j < cols.count; ++j) {
    mpz_class sum = 0;
    for (int i = 0; i < rows.count; ++i) {
      const mpz_class& e = out.M.at(i, j);
      if (e != 0 && e != 1)
        fail_invariant("RepeatedCharacter", "entry " + e.get_str() + " not in {0,1}");
      sum += e;
    }
    if (sum != out.sizeR)
      fail_invariant("RepeatedCharacter", "column sum " + sum.get_str() + " != |R|");
  }

  for (int i = 0; i < rows.count; ++i) out.rowLabels.push_back(D.G.label(rows.reps[i]));
  for (int j = 0; j < cols.count; ++j) out.colLabels.push_back(D.G.label(cols.reps[j]));
  return out;
}

namespace {

void add_row_multiple(IntMat& M, int dst, int src, const mpz_class& q) {
  for (int j = 0; j < M.cols; ++j) M.at(dst, j) -= q * M.at(src, j);
}

void add_col_multiple(IntMat& M, int dst, int src, const mpz_class& q) {
  for (int i = 0; i < M.rows; ++i) M.at(i, dst) -= q * M.at(i, src);
}

void swap_rows(IntMat& M, int i1, int i2) {
  if (i1 == i2) return;
  for (int j = 0; j < M.cols; ++j) std::swap(M.at(i1, j), M.at(i2, j));
}

void swap_cols(IntMat& M, int j1, int j2) {
  if (j1 == j2) return;
  for (int i = 0; i < M.rows; ++i) std::swap(M.at(i, j1), M.at(i, j2));
}

void negate_row(IntMat& M, int i) {
  for (int j = 0; j < M.cols; ++j) M.at(i, j) = -M.at(i, j);
}

}  // namespace

SnfResult smith_normal_form(const IntMat& input) {
  SnfResult res;
  IntMat M = input;
  res.U = IntMat::eye(M.rows);
  res.V = IntMat::eye(M.cols);
  const int m = std::min(M.rows, M.cols);

  for (int k = 0; k < m; ++k) {
    for (;;) {
      // pivot: smallest nonzero absolute value in the trailing block
      int pi = -1, pj = -1;
      mpz_class best;
      for (int i = k; i < M.rows; ++i)
        for (int j = k; j < M.cols; ++j) {
          if (M.at(i, j) == 0) continue;
          mpz_class v = abs(M.at(i, j));
          if (pi < 0 || v < best) { best = v; pi = i; pj = j; }
        }
      if (pi < 0) break;  // trailing block is zero
      swap_rows(M, k, pi);
      swap_rows(res.U, k, pi);
      swap_cols(M, k, pj);
      swap_cols(res.V, k, pj);

      bool again = false;
      for (int i = k + 1; i < M.rows; ++i) {
        if (M.at(i, k) == 0) continue;
        mpz_class q = fdiv_z(M.at(i, k), M.at(k, k));
        add_row_multiple(M, i, k, q);
        add_row_multiple(res.U, i, k, q);
        if (M.at(i, k) != 0) again = true;  // remainder left; re-pivot on it
      }
      for (int j = k + 1; j < M.cols; ++j) {
        if (M.at(k, j) == 0) continue;
        mpz_class q = fdiv_z(M.at(k, j), M.at(k, k));
        add_col_multiple(M, j, k, q);
        add_col_multiple(res.V, j, k, q);
        if (M.at(k, j) != 0) again = true;
      }
      if (again) continue;

      // pivot must divide every remaining entry; if not, fold the offending
      // row in and restart the elimination at this corner
      bool divides = true;
      for (int i = k + 1; i < M.rows && divides; ++i)
        for (int j = k + 1; j < M.cols && divides; ++j)
          if (!mpz_divisible_p(M.at(i, j).get_mpz_t(), M.at(k, k).get_mpz_t())) {
            add_row_multiple(M, k, i, mpz_class(-1));
            add_row_multiple(res.U, k, i, mpz_class(-1));
            divides = false;
          }
      if (divides) break;
    }
    if (M.at(k, k) < 0) {
      negate_row(M, k);
      negate_row(res.U, k);
    }
  }

  for (int k = 0; k < m; ++k) {
    res.diag.push_back(M.at(k, k));
    if (M.at(k, k) != 0) ++res.rank;
  }
  for (int k = 0; k + 1 < m; ++k)
    if (res.diag[k + 1] != 0 && res.diag[k] != 0 &&
        !mpz_divisible_p(res.diag[k + 1].get_mpz_t(), res.diag[k].get_mpz_t()))
      fail_invariant("BrokenDivisorChain",
                     res.diag[k].get_str() + " does not divide " + res.diag[k + 1].get_str());
  return res;
}

MtInvariants mt_invariants(const IntMat& M, int g) {
  SnfResult snf = smith_normal_form(M);

  MtInvariants inv;
  inv.rank = snf.rank;
  if (inv.rank > g + 1)
    fail_invariant("RankExceedsGPlusOne", "rank " + std::to_string(inv.rank) + " > g+1 = " +
                                              std::to_string(g + 1));
  inv.orderF = 1;
  for (const mpz_class& d : snf.diag)
    if (d != 0) {
      inv.elementaryDivisors.push_back(d);
      inv.orderF *= d;
    }
  inv.nondegenerate = (inv.rank == g + 1);
  inv.fBound = inv.rank >= 1 ? f_bound(inv.rank) : 1;
  if (inv.orderF > inv.fBound)
    fail_invariant("KernelBoundExceeded",
                   "|F| = " + inv.orderF.get_str() + " > f(" + std::to_string(inv.rank) +
                       ") = " + inv.fBound.get_str());
  return inv;
}

mpz_class f_bound(int x) {
  if (x < 1) fail_config("ZeroInput", "f is defined for x >= 1");
  const mpz_class twoX = pow_z(2, static_cast<unsigned long>(x));
  if (x % 2 == 1) {
    // (x+1)^((x+1)/2) is an integer
    return fdiv_z(pow_z(x + 1, static_cast<unsigned long>((x + 1) / 2)), twoX);
  }
  // floor(sqrt((x+1)^(x+1))) / 2^x, floored once more
  return fdiv_z(isqrt_z(pow_z(x + 1, static_cast<unsigned long>(x + 1))), twoX);
}

namespace {

long long det_small(const int* m, int n) {
  // expansion by minors on the first row; n <= 5
  if (n == 1) return m[0];
  if (n == 2) return static_cast<long long>(m[0]) * m[3] - static_cast<long long>(m[1]) * m[2];
  long long det = 0;
  int sub[16];
  for (int c = 0; c < n; ++c) {
    if (m[c] == 0) continue;
    int si = 0;
    for (int i = 1; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (j != c) sub[si++] = m[i * n + j];
    long long d = det_small(sub, n - 1);
    det += (c % 2 == 0 ? d : -d);
  }
  return det;
}

long long det_of_mask(unsigned long long mask, int n) {
  int m[25];
  for (int k = 0; k < n * n; ++k) m[k] = (mask >> k) & 1;
  return det_small(m, n);
}

}  // namespace

HadamardScan hadamard_max_det(int n, bool exhaustive, long long samples) {
  if (n < 1 || n > 5) fail_config("ZeroInput", "n must be in 1..5");

  HadamardScan scan;
  scan.n = n;
  scan.exhaustive = exhaustive;
  scan.bound = fdiv_z(isqrt_z(pow_z(n + 1, static_cast<unsigned long>(n + 1))),
                      pow_z(2, static_cast<unsigned long>(n)));

  long long maxDet = 0;
  if (exhaustive) {
    if (n > 4)
      fail_resource("TooLargeForExhaustive",
                    "2^" + std::to_string(n * n) + " matrices; use sampled mode");
    const unsigned long long total = 1ull << (n * n);
    for (unsigned long long mask = 0; mask < total; ++mask) {
      long long d = det_of_mask(mask, n);
      if (d < 0) d = -d;
      if (d > maxDet) maxDet = d;
    }
    scan.tested = static_cast<long long>(total);
  } else {
    std::mt19937_64 rng(0x4841444dull);  // fixed seed: deterministic sampling
    const unsigned long long total = 1ull << (n * n);
    for (long long s = 0; s < samples; ++s) {
      long long d = det_of_mask(rng() % total, n);
      if (d < 0) d = -d;
      if (d > maxDet) maxDet = d;
    }
    scan.tested = samples;
  }
  scan.maxAbsDet = z_ll(maxDet);
  if (scan.maxAbsDet > scan.bound)
    fail_invariant("DeterminantBoundExceeded",
                   "max |det| = " + std::to_string(maxDet) + " > " + scan.bound.get_str());
  return scan;
}

}  // namespace cmtor
