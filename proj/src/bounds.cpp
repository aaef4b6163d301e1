#include "cmtor/bounds.hpp"

#include <algorithm>

#include "cmtor/errors.hpp"
#include "cmtor/numeric.hpp"

namespace cmtor {

void validate_bound_context(const BoundContext& ctx) {
  if (!is_prime_ll(ctx.ell)) fail_config("NotPrime", "ell = " + std::to_string(ctx.ell));
  if (ctx.n < 1) fail_config("BadContext", "n must be >= 1");
  if (ctx.hK < 1) fail_config("BadContext", "hK must be >= 1");
  if (ctx.muE < 2 || ctx.muE % 2 != 0)
    fail_config("BadContext", "muE must be an even integer >= 2");
  if (ctx.muStar != 1 && ctx.muStar != ctx.muE)
    fail_config("BadContext", "muStar must be 1 or muE");
  if (ctx.goodReduction && ctx.muStar != 1)
    fail_config("BadContext", "muStar must be 1 under good reduction");
  if (ctx.g < 1) fail_config("BadContext", "g must be >= 1");
  if (ctx.r < 1 || ctx.r > ctx.g + 1)
    fail_config("BadContext", "r must satisfy 1 <= r <= g+1");
  if (ctx.orderF < 1) fail_config("BadContext", "orderF must be >= 1");
  if (ctx.degKoverEstar < 1) fail_config("BadContext", "[K:E*] must be >= 1");
  if (ctx.dimT < 0) fail_config("BadContext", "dimT must be >= 0");
}

Enclosure sqrt_enclosure(const mpz_class& n) {
  if (n < 0) fail_config("ZeroInput", "sqrt of a negative number");
  const mpz_class scale = pow_z(10, 6);
  mpz_class s = isqrt_z(n * scale * scale);
  Enclosure e;
  if (s * s == n * scale * scale) {
    e.lo = e.hi = make_q(s, scale);
    return e;
  }
  e.lo = make_q(s, scale);
  e.hi = make_q(s + 1, scale);
  return e;
}

std::pair<long long, mpq_class> ellpart(const mpz_class& m, long long ell) {
  long long v = valuation_z(m, ell);  // rejects m = 0
  return {v, make_q(1, pow_z(ell, static_cast<unsigned long>(v)))};
}

Interval good_reduction_torus_bounds(int dimT, long long ell, int n) {
  if (dimT < 1) fail_config("BadContext", "torus dimension must be >= 1");
  const mpq_class below = make_q(ell - 1, ell);
  const mpq_class above = make_q(ell + 1, ell);
  const mpz_class levelPart = pow_z(ell, static_cast<unsigned long>(n) * dimT);
  Interval out;
  out.lo = out.hi = levelPart;
  for (int i = 0; i < dimT; ++i) {
    out.lo *= below;
    out.hi *= above;
  }
  return out;
}

std::vector<std::pair<long long, bool>> good_reduction_primes(const mpz_class& discE,
                                                              const std::vector<long long>& ells) {
  if (discE == 0) fail_config("ZeroDiscriminant", "discriminant must be nonzero");
  std::vector<std::pair<long long, bool>> out;
  for (long long ell : ells)
    out.emplace_back(ell, !mpz_divisible_ui_p(discE.get_mpz_t(), static_cast<unsigned long>(ell)));
  return out;
}

Interval mt_order_bounds_nondegenerate(int g, long long ell, int n) {
  if (g < 1) fail_config("BadContext", "g must be >= 1");
  const mpz_class levelPart = pow_z(ell, static_cast<unsigned long>(n) * (g + 1));
  Interval out;
  if (ell == 2) {
    out.lo = make_q(levelPart, pow_z(2, static_cast<unsigned long>(2 * g + 3)));
    out.hi = mpq_class(pow_z(2, static_cast<unsigned long>(2 * g - 1)) * levelPart);
    return out;
  }
  out.lo = levelPart;
  out.hi = levelPart;
  const mpq_class below = make_q(ell - 1, ell);
  const mpq_class above = make_q(ell + 1, ell);
  for (int i = 0; i < g + 1; ++i) out.lo *= below;
  out.hi *= pow_z(2, static_cast<unsigned long>(g));
  for (int i = 0; i < g - 1; ++i) out.hi *= above;
  return out;
}

namespace {

mpz_class ell_level_power(const BoundContext& ctx) {
  return pow_z(ctx.ell, static_cast<unsigned long>(ctx.n) * ctx.r);
}

}  // namespace

bool large_prime_applicable(const BoundContext& ctx, std::string* whyNot) {
  const mpz_class gFac = factorial_z(static_cast<unsigned long>(ctx.g));
  if (z_ll(ctx.ell) * z_ll(ctx.ell) <= 2 * gFac) {
    if (whyNot) *whyNot = "requires ell^2 > 2*g!";
    return false;
  }
  if (!ctx.unramifiedE || !ctx.unramifiedK) {
    // unramified in both fields forces unramified in their compositum
    if (whyNot) *whyNot = "requires ell unramified in the CM field and in the base field";
    return false;
  }
  return true;
}

Enclosure large_prime_lower(const BoundContext& ctx) {
  const Enclosure root = sqrt_enclosure(factorial_z(static_cast<unsigned long>(ctx.g)));
  const mpz_class num = ell_level_power(ctx);
  Enclosure out;
  // dividing by the larger root bounds the value from below
  out.lo = mpq_class(num) / (z_ll(4 * ctx.muE) * root.hi);
  out.hi = mpq_class(num) / (z_ll(4 * ctx.muE) * root.lo);
  out.lo.canonicalize();
  out.hi.canonicalize();
  return out;
}

mpq_class large_prime_upper(const BoundContext& ctx) {
  return make_q(z_ll(5 * ctx.muE) * ctx.hK * ell_level_power(ctx), 2);
}

mpz_class index_bound_galois_in_mt(const BoundContext& ctx) { return z_ll(ctx.muE) * ctx.hK; }

mpz_class index_bound_mt_stated(const BoundContext& ctx) {
  return z_ll(ctx.muStar) * ctx.degKoverEstar * pow_z(ctx.orderF, 2ul * ctx.r);
}

mpz_class index_bound_mt_sharper(const BoundContext& ctx) {
  const long long v = valuation_z(ctx.orderF, ctx.ell);
  return z_ll(ctx.muStar) * ctx.degKoverEstar * pow_z(ctx.orderF, static_cast<unsigned long>(ctx.r)) *
         pow_z(ctx.ell, static_cast<unsigned long>(v) * ctx.r);
}

bool index_divisibility_applicable(const BoundContext& ctx) {
  return ctx.unramifiedE && !mpz_divisible_ui_p(ctx.orderF.get_mpz_t(),
                                                static_cast<unsigned long>(ctx.ell));
}

mpz_class index_divisibility_modulus(const BoundContext& ctx, bool dropDegFactor) {
  mpz_class m = z_ll(ctx.muStar) * ctx.orderF;
  if (!dropDegFactor) m *= ctx.degKoverEstar;
  return m;
}

bool mod_ell_divisibility_applicable(const BoundContext& ctx) {
  return ctx.unramifiedE && ctx.goodReduction;
}

mpz_class mod_ell_divisibility_modulus(const BoundContext& ctx, bool dropDegFactor) {
  return dropDegFactor ? ctx.orderF : mpz_class(ctx.degKoverEstar * ctx.orderF);
}

mpz_class best_index_upper(const BoundContext& ctx) {
  // composes stated bounds only; the sharper intermediate stays informational
  mpz_class best = index_bound_mt_stated(ctx);
  if (index_divisibility_applicable(ctx)) {
    best = std::min(best, index_divisibility_modulus(ctx, false));
    if (ctx.unramifiedK) best = std::min(best, index_divisibility_modulus(ctx, true));
  }
  return best;
}

namespace {

std::string b2s(bool b) { return b ? "true" : "false"; }

void put(BoundEntry& e, const std::string& k, const std::string& v) {
  e.payload.emplace_back(k, v);
}

}  // namespace

std::vector<BoundEntry> large_prime_degree_bounds(const BoundContext& ctx) {
  BoundEntry e;
  e.id = "degree-window-large-prime";
  e.kind = "interval";
  e.claim = "degree-bounds-large-unramified";
  std::string whyNot;
  e.applicable = large_prime_applicable(ctx, &whyNot);
  if (!e.applicable) {
    put(e, "reason", whyNot);
    return {e};
  }
  const Enclosure lower = large_prime_lower(ctx);
  const mpq_class upper = large_prime_upper(ctx);
  put(e, "lowerEnclosureLo", q_to_string(lower.lo));
  put(e, "lowerEnclosureHi", q_to_string(lower.hi));
  put(e, "lowerExact", b2s(lower.exact()));
  put(e, "lowerInt", z_to_string(std::max(mpz_class(1), ceil_q(lower.lo))));
  put(e, "upper", q_to_string(upper));
  put(e, "upperInt", z_to_string(floor_q(upper)));
  return {e};
}

std::vector<BoundEntry> index_bounds(const BoundContext& ctx) {
  std::vector<BoundEntry> out;

  {
    BoundEntry e;
    e.id = "index-galois-in-mt";
    e.kind = "value";
    e.claim = "index-galois-in-mt";
    put(e, "bound", z_to_string(index_bound_galois_in_mt(ctx)));
    out.push_back(e);
  }
  {
    BoundEntry e;
    e.id = "index-mt-over-galois";
    e.kind = "value";
    e.claim = "index-mt-over-galois-stated";
    put(e, "bound", z_to_string(index_bound_mt_stated(ctx)));
    out.push_back(e);
  }
  {
    BoundEntry e;
    e.id = "index-mt-over-galois-sharper";
    e.kind = "value";
    e.claim = "index-mt-over-galois-sharper";
    put(e, "bound", z_to_string(index_bound_mt_sharper(ctx)));
    put(e, "informational", "true");
    out.push_back(e);
  }
  {
    BoundEntry e;
    e.id = "index-divisibility-unramified";
    e.kind = "divisibility";
    e.claim = "index-divisibility-unramified";
    e.applicable = index_divisibility_applicable(ctx);
    if (e.applicable) {
      put(e, "modulus", z_to_string(index_divisibility_modulus(ctx, false)));
      if (ctx.unramifiedK)
        put(e, "modulusUnramifiedBase", z_to_string(index_divisibility_modulus(ctx, true)));
    } else {
      put(e, "reason", "requires ell unramified in the CM field and coprime to |F|");
    }
    out.push_back(e);
  }
  {
    BoundEntry e;
    e.id = "index-divisibility-mod-ell";
    e.kind = "divisibility";
    e.claim = "index-divisibility-mod-ell";
    e.applicable = mod_ell_divisibility_applicable(ctx);
    if (e.applicable) {
      put(e, "modulus", z_to_string(mod_ell_divisibility_modulus(ctx, false)));
      if (ctx.unramifiedK)
        put(e, "modulusUnramifiedBase", z_to_string(mod_ell_divisibility_modulus(ctx, true)));
    } else {
      put(e, "reason", "requires ell unramified in the CM field and good reduction");
    }
    out.push_back(e);
  }
  return out;
}

std::vector<BoundEntry> division_field_bounds(const BoundContext& ctx) {
  std::vector<BoundEntry> out;

  const bool nondeg = (ctx.r == ctx.g + 1);
  bool haveWindow = false;
  mpq_class mtLo, mtHi;

  if (nondeg) {
    Interval w = mt_order_bounds_nondegenerate(ctx.g, ctx.ell, ctx.n);
    mtLo = w.lo;
    mtHi = w.hi;
    haveWindow = true;
  }
  if (ctx.unramifiedE) {
    Interval w = good_reduction_torus_bounds(ctx.r, ctx.ell, ctx.n);
    if (haveWindow) {
      mtLo = std::max(mtLo, w.lo);
      mtHi = std::min(mtHi, w.hi);
    } else {
      mtLo = w.lo;
      mtHi = w.hi;
      haveWindow = true;
    }
  }

  {
    BoundEntry e;
    e.id = "division-degree-window";
    e.kind = "interval";
    e.claim = "division-degree-window";
    e.applicable = haveWindow;
    if (!haveWindow) {
      put(e, "reason", "needs a nondegenerate type or ell unramified in the CM field");
    } else {
      const mpz_class indexUpper = best_index_upper(ctx);
      mpq_class lower = mtLo / indexUpper;
      lower.canonicalize();
      const mpq_class upper = mtHi * index_bound_galois_in_mt(ctx);
      put(e, "mtOrderLower", q_to_string(mtLo));
      put(e, "mtOrderUpper", q_to_string(mtHi));
      put(e, "indexUpper", z_to_string(indexUpper));
      put(e, "lower", q_to_string(lower));
      put(e, "lowerInt", z_to_string(std::max(mpz_class(1), ceil_q(lower))));
      put(e, "upper", q_to_string(upper));
      put(e, "upperInt", z_to_string(floor_q(upper)));
    }
    out.push_back(e);
  }

  {
    BoundEntry e;
    e.id = "surface-degree-lower";
    e.kind = "interval";
    e.claim = "surface-degree-lower";
    e.applicable = (ctx.g == 2 && nondeg && ctx.orderF == 1 && ctx.muStar == 1);
    if (e.applicable) {
      Interval w = mt_order_bounds_nondegenerate(2, ctx.ell, ctx.n);
      mpq_class lower = w.lo / ctx.degKoverEstar;
      lower.canonicalize();
      put(e, "lower", q_to_string(lower));
      put(e, "lowerInt", z_to_string(std::max(mpz_class(1), ceil_q(lower))));
      if (ctx.unramifiedE && ctx.unramifiedK)
        put(e, "lowerUnramified", q_to_string(w.lo));
    } else {
      put(e, "reason", "surface specialization needs g=2, r=3, |F|=1, muStar=1");
    }
    out.push_back(e);
  }

  {
    BoundEntry e;
    e.id = "quadratic-equality";
    e.kind = "equality";
    e.claim = "quadratic-equality";
    e.applicable = (ctx.g == 1 && nondeg && ctx.orderF == 1 && ctx.goodReduction &&
                    ctx.unramifiedE && ctx.unramifiedK);
    if (e.applicable) {
      put(e, "modulus", z_to_string(index_divisibility_modulus(ctx, true)));
      put(e, "statement",
          "the level-ell^n Galois image is the full unit group of the CM order mod ell^n");
    } else {
      put(e, "reason",
          "equality case needs g=1, |F|=1, good reduction and ell unramified in both fields");
    }
    out.push_back(e);
  }

  return out;
}

std::vector<BoundEntry> full_bound_report(const BoundContext& ctx) {
  validate_bound_context(ctx);
  std::vector<BoundEntry> out;

  {
    BoundEntry e;
    e.id = "ellpart-orderF";
    e.kind = "value";
    e.claim = "ell-adic-absolute-value";
    auto [v, q] = ellpart(ctx.orderF, ctx.ell);
    put(e, "valuation", std::to_string(v));
    put(e, "absValue", q_to_string(q));
    out.push_back(e);
  }

  if (ctx.discE != 0) {
    BoundEntry e;
    e.id = "torus-good-reduction";
    e.kind = "flag";
    e.claim = "torus-good-reduction-primes";
    auto flags = good_reduction_primes(ctx.discE, {ctx.ell});
    put(e, "ell", std::to_string(ctx.ell));
    put(e, "torusGoodReduction", b2s(flags[0].second));
    out.push_back(e);
  }

  if (ctx.dimT > 0) {
    BoundEntry e;
    e.id = "torus-order-window";
    e.kind = "interval";
    e.claim = "torus-order-good-reduction";
    // the torus has good reduction when ell is unramified in the defining
    // field, equivalently when ell does not divide its discriminant
    e.applicable =
        ctx.unramifiedE ||
        (ctx.discE != 0 &&
         !mpz_divisible_ui_p(ctx.discE.get_mpz_t(), static_cast<unsigned long>(ctx.ell)));
    if (e.applicable) {
      Interval w = good_reduction_torus_bounds(ctx.dimT, ctx.ell, ctx.n);
      put(e, "lower", q_to_string(w.lo));
      put(e, "upper", q_to_string(w.hi));
    } else {
      put(e, "reason", "torus order window needs good reduction of the torus");
    }
    out.push_back(e);
  }

  {
    BoundEntry e;
    e.id = "mt-order-window";
    e.kind = "interval";
    e.claim = "mt-order-nondegenerate";
    e.applicable = (ctx.r == ctx.g + 1);
    if (e.applicable) {
      Interval w = mt_order_bounds_nondegenerate(ctx.g, ctx.ell, ctx.n);
      put(e, "lower", q_to_string(w.lo));
      put(e, "upper", q_to_string(w.hi));
    } else {
      put(e, "reason", "type is degenerate (r < g+1)");
    }
    out.push_back(e);
  }

  for (auto& e : large_prime_degree_bounds(ctx)) out.push_back(std::move(e));
  for (auto& e : index_bounds(ctx)) out.push_back(std::move(e));
  for (auto& e : division_field_bounds(ctx)) out.push_back(std::move(e));
  return out;
}

}  // namespace cmtor
