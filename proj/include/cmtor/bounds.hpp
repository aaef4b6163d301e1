#ifndef CMTOR_BOUNDS_HPP
#define CMTOR_BOUNDS_HPP

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace cmtor {

// User-supplied arithmetic context. Field-arithmetic quantities (class
// number, roots of unity, degrees, discriminant, reduction flags) are inputs,
// never computed here.
struct BoundContext {
  int g = 1;                  // dimension
  int r = 2;                  // rank of the character matrix
  mpz_class orderF = 1;       // |F|
  long long ell = 2;          // prime
  int n = 1;                  // level exponent
  mpz_class hK = 1;           // class number of the base field
  long long muE = 2;          // number of roots of unity in the CM field
  long long muStar = 1;       // 1 under good reduction, else muE
  mpz_class degKoverEstar = 1;
  mpz_class discE = 0;        // 0 = not supplied
  int dimT = 0;               // 0 = not supplied
  bool unramifiedE = false;   // ell unramified in the CM field
  bool unramifiedK = false;   // ell unramified in the base field
  bool goodReduction = false; // the abelian variety has good reduction at ell
};

void validate_bound_context(const BoundContext& ctx);

// closed interval with exact rational endpoints, lo <= quantity <= hi
struct Interval {
  mpq_class lo, hi;
};

// encloses a single real value; exact() means the value is rational
struct Enclosure {
  mpq_class lo, hi;
  bool exact() const { return lo == hi; }
};

// lo <= sqrt(n) <= hi with hi - lo <= 1e-6 * hi; exact for perfect squares
Enclosure sqrt_enclosure(const mpz_class& n);

// (v_ell(m), ell^-v_ell(m)) for m != 0
std::pair<long long, mpq_class> ellpart(const mpz_class& m, long long ell);

// [(1-1/ell)^d * ell^(n*d), (1+1/ell)^d * ell^(n*d)]: order window for the
// Z/ell^n points of a d-dimensional torus with good reduction
Interval good_reduction_torus_bounds(int dimT, long long ell, int n);

// per-ell flag: ell does not divide the field discriminant, which guarantees
// good reduction of the associated torus
std::vector<std::pair<long long, bool>> good_reduction_primes(const mpz_class& discE,
                                                              const std::vector<long long>& ells);

// order window for the Z/ell^n points of a nondegenerate rank-(g+1) torus
Interval mt_order_bounds_nondegenerate(int g, long long ell, int n);

// ---- pure bound formulas consumed by the report entries ----

// two-sided degree window for large primes unramified in both fields:
// applicable iff ell^2 > 2*g! and both unramified flags are set
bool large_prime_applicable(const BoundContext& ctx, std::string* whyNot = nullptr);
// enclosure of ell^(n*r) / (4 * muE * sqrt(g!))
Enclosure large_prime_lower(const BoundContext& ctx);
// (5/2) * muE * hK * ell^(n*r), exact
mpq_class large_prime_upper(const BoundContext& ctx);

mpz_class index_bound_galois_in_mt(const BoundContext& ctx);   // muE * hK
mpz_class index_bound_mt_stated(const BoundContext& ctx);      // muStar * [K:E*] * |F|^(2r)
mpz_class index_bound_mt_sharper(const BoundContext& ctx);     // muStar * [K:E*] * |F|^r * ell^(r*v_ell(|F|))

bool index_divisibility_applicable(const BoundContext& ctx);   // unramifiedE and ell does not divide |F|
// muStar * [K:E*] * |F|; dropDegFactor (valid when also unramifiedK) removes [K:E*]
mpz_class index_divisibility_modulus(const BoundContext& ctx, bool dropDegFactor);

bool mod_ell_divisibility_applicable(const BoundContext& ctx); // unramifiedE and good reduction
mpz_class mod_ell_divisibility_modulus(const BoundContext& ctx, bool dropDegFactor);

// smallest integer upper bound for [MT(Z_ell) : G intersect MT(Z_ell)]
// among the bounds applicable in this context
mpz_class best_index_upper(const BoundContext& ctx);

// ---- report entries ----

struct BoundEntry {
  std::string id;
  std::string kind;  // interval | divisibility | equality | value | flag
  std::string claim; // key into the claim registry
  bool applicable = true;
  // ordered key/value payload; rationals rendered canonically as "n" or "n/d"
  std::vector<std::pair<std::string, std::string>> payload;
};

std::vector<BoundEntry> large_prime_degree_bounds(const BoundContext& ctx);
std::vector<BoundEntry> index_bounds(const BoundContext& ctx);
std::vector<BoundEntry> division_field_bounds(const BoundContext& ctx);
// everything: torus window (if dimT set), good-reduction primes (if discE
// set), large-prime window, index bounds, division-field composition
std::vector<BoundEntry> full_bound_report(const BoundContext& ctx);

}  // namespace cmtor

#endif
