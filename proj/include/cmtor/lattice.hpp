#ifndef CMTOR_LATTICE_HPP
#define CMTOR_LATTICE_HPP

#include <gmpxx.h>

#include <vector>

#include "cmtor/cm.hpp"

namespace cmtor {

struct IntMat {
  int rows = 0, cols = 0;
  std::vector<mpz_class> a;  // row-major

  IntMat() = default;
  IntMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  mpz_class& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const mpz_class& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
  static IntMat eye(int n);
  bool operator==(const IntMat&) const = default;
};

IntMat mat_mul(const IntMat& A, const IntMat& B);

// Character matrix of the reflex norm: rows indexed by Hprime\G, columns by
// H\G; column of the coset Hg has a 1 in row Hprime*r*g for each r in R.
// Checked: all entries in {0,1}, every column sum = |R|.
struct ReflexNormMatrix {
  IntMat M;
  std::vector<std::string> rowLabels;  // canonical rep labels of Hprime\G
  std::vector<std::string> colLabels;  // canonical rep labels of H\G
  int sizeR = 0;
};

ReflexNormMatrix reflex_norm_matrix(const CmDatum& D, const ReflexDatum& X);

// Smith normal form. diag is the full divisibility chain including trailing
// zeros; U (rows x rows) and V (cols x cols) are unimodular with
// U * input * V = diag.
struct SnfResult {
  std::vector<mpz_class> diag;
  int rank = 0;
  IntMat U, V;
};

SnfResult smith_normal_form(const IntMat& M);

struct MtInvariants {
  int rank = 0;
  std::vector<mpz_class> elementaryDivisors;  // the nonzero ones
  mpz_class orderF;                           // product of the nonzero divisors
  bool nondegenerate = false;                 // rank == g+1
  mpz_class fBound;                           // f_bound(rank)
};

// rank <= g+1 and orderF <= f_bound(rank) are checked assertions
MtInvariants mt_invariants(const IntMat& M, int g);

// floor(2*((x+1)/4)^((x+1)/2)) = floor((x+1)^((x+1)/2) / 2^x), exact
mpz_class f_bound(int x);

struct HadamardScan {
  int n = 0;
  bool exhaustive = true;
  long long tested = 0;
  mpz_class maxAbsDet;
  mpz_class bound;
};

// max |det| over 0/1 matrices of size n: exhaustive for n <= 4 (2^(n*n)
// matrices), deterministic sampling for n = 5
HadamardScan hadamard_max_det(int n, bool exhaustive, long long samples = 100000);

}  // namespace cmtor

#endif
