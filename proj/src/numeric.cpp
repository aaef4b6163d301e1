#include "cmtor/numeric.hpp"

#include "cmtor/errors.hpp"

namespace cmtor {

mpz_class pow_z(const mpz_class& base, unsigned long e) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

mpz_class isqrt_z(const mpz_class& n) {
  mpz_class out;
  mpz_sqrt(out.get_mpz_t(), n.get_mpz_t());
  return out;
}

mpz_class fdiv_z(const mpz_class& a, const mpz_class& b) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

mpz_class factorial_z(unsigned long n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

mpq_class make_q(const mpz_class& num, const mpz_class& den) {
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

mpz_class floor_q(const mpq_class& q) {
  return fdiv_z(q.get_num(), q.get_den());
}

mpz_class ceil_q(const mpq_class& q) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return out;
}

bool is_prime_ll(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

long long valuation_z(const mpz_class& m, long long ell) {
  if (m == 0) fail_config("ZeroInput", "valuation of 0 is undefined");
  mpz_class v = abs(m);
  long long k = 0;
  while (mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(ell))) {
    v /= static_cast<long>(ell);
    ++k;
  }
  return k;
}

std::string q_to_string(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string z_to_string(const mpz_class& z) { return z.get_str(); }

long long pow_ll(long long base, int e) {
  long long out = 1;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

long long mod_pos(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

long long mod_inverse(long long a, long long m) {
  long long t = 0, newt = 1, r = m, newr = mod_pos(a, m);
  while (newr != 0) {
    long long q = r / newr;
    long long tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (r != 1) fail_config("NotInvertible", "no inverse of " + std::to_string(a) + " mod " + std::to_string(m));
  return mod_pos(t, m);
}

}  // namespace cmtor
