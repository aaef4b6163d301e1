#ifndef CMTOR_NUMERIC_HPP
#define CMTOR_NUMERIC_HPP

#include <gmpxx.h>

#include <string>

namespace cmtor {

// gmpxx has no long long constructors; on this target long is just as wide
inline mpz_class z_ll(long long v) { return mpz_class(static_cast<long>(v)); }

mpz_class pow_z(const mpz_class& base, unsigned long e);

// floor of sqrt(n); n >= 0
mpz_class isqrt_z(const mpz_class& n);

// floor division, works for negative a
mpz_class fdiv_z(const mpz_class& a, const mpz_class& b);

mpz_class factorial_z(unsigned long n);

inline mpz_class pow_z(long long base, unsigned long e) { return pow_z(z_ll(base), e); }

// canonicalized rational
mpq_class make_q(const mpz_class& num, const mpz_class& den);
inline mpq_class make_q(long long num, long long den) { return make_q(z_ll(num), z_ll(den)); }

mpz_class floor_q(const mpq_class& q);
mpz_class ceil_q(const mpq_class& q);

bool is_prime_ll(long long n);

// v_ell(m) for m != 0
long long valuation_z(const mpz_class& m, long long ell);

// "n" when denominator is 1, otherwise "n/d"
std::string q_to_string(const mpq_class& q);
std::string z_to_string(const mpz_class& z);

long long pow_ll(long long base, int e);  // caller guarantees no overflow
long long mod_pos(long long a, long long m);
long long mod_inverse(long long a, long long m);  // gcd(a,m)=1 required

}  // namespace cmtor

#endif
