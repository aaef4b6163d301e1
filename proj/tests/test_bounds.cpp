#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <string>

#include "cmtor/bounds.hpp"
#include "cmtor/errors.hpp"
#include "cmtor/numeric.hpp"

using namespace cmtor;

namespace {

bool throws_named(const std::function<void()>& fn, ErrorKind kind, const std::string& name) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == kind && e.name() == name;
  }
  return false;
}

const BoundEntry& find_entry(const std::vector<BoundEntry>& v, const std::string& id) {
  for (const auto& e : v)
    if (e.id == id) return e;
  REQUIRE_MESSAGE(false, "missing entry " << id);
  static BoundEntry dummy;
  return dummy;
}

std::string value_of(const BoundEntry& e, const std::string& key) {
  for (const auto& [k, v] : e.payload)
    if (k == key) return v;
  REQUIRE_MESSAGE(false, "missing key " << key << " in " << e.id);
  return {};
}

// replicates the surface fixture: standard quintic cyclotomic type
BoundContext surface_ctx(long long ell, int n) {
  BoundContext ctx;
  ctx.g = 2;
  ctx.r = 3;
  ctx.orderF = 1;
  ctx.ell = ell;
  ctx.n = n;
  ctx.hK = 1;
  ctx.muE = 10;
  ctx.muStar = 1;
  ctx.degKoverEstar = 1;
  ctx.discE = 125;
  ctx.dimT = 3;
  ctx.goodReduction = true;
  return ctx;
}

BoundContext quadratic_ctx() {
  BoundContext ctx;
  ctx.g = 1;
  ctx.r = 2;
  ctx.orderF = 1;
  ctx.ell = 5;
  ctx.n = 1;
  ctx.hK = 1;
  ctx.muE = 2;
  ctx.muStar = 1;
  ctx.degKoverEstar = 1;
  ctx.discE = -7;
  ctx.unramifiedE = true;
  ctx.unramifiedK = true;
  ctx.goodReduction = true;
  return ctx;
}

}  // namespace

TEST_CASE("context validation") {
  BoundContext ok = quadratic_ctx();
  validate_bound_context(ok);  // must not throw

  auto reject = [&](void (*tweak)(BoundContext&), const char* name) {
    BoundContext c = quadratic_ctx();
    tweak(c);
    CHECK(throws_named([&] { validate_bound_context(c); }, ErrorKind::Config, name));
  };
  reject([](BoundContext& c) { c.ell = 4; }, "NotPrime");
  reject([](BoundContext& c) { c.n = 0; }, "BadContext");
  reject([](BoundContext& c) { c.hK = 0; }, "BadContext");
  reject([](BoundContext& c) { c.muE = 3; }, "BadContext");
  reject([](BoundContext& c) { c.muE = 0; }, "BadContext");
  reject([](BoundContext& c) { c.muStar = 3; }, "BadContext");
  // muE is a legal muStar in general but not under good reduction
  reject([](BoundContext& c) { c.muStar = 2; }, "BadContext");
  reject([](BoundContext& c) { c.g = 0; }, "BadContext");
  reject([](BoundContext& c) { c.r = 0; }, "BadContext");
  reject([](BoundContext& c) { c.r = 3; }, "BadContext");  // r > g+1
  reject([](BoundContext& c) { c.orderF = 0; }, "BadContext");
  reject([](BoundContext& c) { c.degKoverEstar = 0; }, "BadContext");
  reject([](BoundContext& c) { c.dimT = -1; }, "BadContext");
}

TEST_CASE("square root enclosures") {
  Enclosure e144 = sqrt_enclosure(144);
  CHECK(e144.exact());
  CHECK(e144.lo == 12);

  Enclosure e0 = sqrt_enclosure(0);
  CHECK(e0.exact());
  CHECK(e0.lo == 0);

  Enclosure e2 = sqrt_enclosure(2);
  CHECK_FALSE(e2.exact());
  CHECK(e2.lo < e2.hi);
  CHECK(e2.lo * e2.lo <= 2);
  CHECK(e2.hi * e2.hi >= 2);
  CHECK(e2.hi - e2.lo == make_q(1, 1000000));

  CHECK(throws_named([] { sqrt_enclosure(-1); }, ErrorKind::Config, "ZeroInput"));
}

TEST_CASE("prime part extraction") {
  auto [v12, q12] = ellpart(12, 2);
  CHECK(v12 == 2);
  CHECK(q12 == make_q(1, 4));
  auto [v5, q5] = ellpart(5, 3);
  CHECK(v5 == 0);
  CHECK(q5 == 1);
  CHECK(throws_named([] { ellpart(0, 3); }, ErrorKind::Config, "ZeroInput"));
}

TEST_CASE("torus point windows") {
  Interval w = good_reduction_torus_bounds(3, 3, 1);
  CHECK(w.lo == 8);
  CHECK(w.hi == 64);

  Interval w2 = good_reduction_torus_bounds(1, 5, 2);
  CHECK(w2.lo == 20);
  CHECK(w2.hi == 30);

  CHECK(throws_named([] { good_reduction_torus_bounds(0, 3, 1); }, ErrorKind::Config,
                     "BadContext"));

  auto flags = good_reduction_primes(125, {2, 3, 5, 7});
  CHECK(flags.size() == 4);
  CHECK(flags[0].second);        // 2 does not divide 125
  CHECK(flags[1].second);        // 3 does not divide 125
  CHECK_FALSE(flags[2].second);  // 5 does
  CHECK(flags[3].second);
  CHECK(throws_named([] { good_reduction_primes(0, {3}); }, ErrorKind::Config,
                     "ZeroDiscriminant"));
}

TEST_CASE("special torus order windows") {
  SUBCASE("odd prime") {
    Interval w = mt_order_bounds_nondegenerate(2, 3, 1);
    CHECK(w.lo == 8);    // (2/3)^3 * 27
    CHECK(w.hi == 144);  // 2^2 * (4/3) * 27

    Interval w5 = mt_order_bounds_nondegenerate(1, 5, 1);
    CHECK(w5.lo == 16);  // (4/5)^2 * 25
    CHECK(w5.hi == 50);  // 2 * 25
  }
  SUBCASE("two-adic endpoints") {
    Interval w = mt_order_bounds_nondegenerate(1, 2, 1);
    CHECK(w.lo == make_q(1, 8));  // 2^(2) / 2^5
    CHECK(w.hi == 8);             // 2^1 * 2^2
    Interval w3 = mt_order_bounds_nondegenerate(2, 2, 2);
    CHECK(w3.lo == make_q(64, 128));  // 2^6 / 2^7
    CHECK(w3.hi == 8 * 64);           // 2^3 * 2^6
  }
  SUBCASE("grows with the level") {
    mpq_class prevLo = 0, prevHi = 0;
    for (int n = 1; n <= 4; ++n) {
      Interval w = mt_order_bounds_nondegenerate(2, 3, n);
      CHECK(w.lo > prevLo);
      CHECK(w.hi > prevHi);
      prevLo = w.lo;
      prevHi = w.hi;
    }
  }
}

TEST_CASE("large prime window") {
  SUBCASE("gate needs ell^2 > 2*g! and both unramified flags") {
    BoundContext c = quadratic_ctx();
    c.g = 2;
    c.r = 3;
    std::string why;
    c.ell = 2;  // 4 > 2*2! fails
    CHECK_FALSE(large_prime_applicable(c, &why));
    CHECK(why == "requires ell^2 > 2*g!");
    c.ell = 3;
    CHECK(large_prime_applicable(c, &why));
    c.unramifiedK = false;
    CHECK_FALSE(large_prime_applicable(c, &why));
    CHECK(why == "requires ell unramified in the CM field and in the base field");
  }
  SUBCASE("genus one enclosure is exact") {
    BoundContext c = quadratic_ctx();  // sqrt(1!) = 1
    Enclosure lower = large_prime_lower(c);
    CHECK(lower.exact());
    CHECK(lower.lo == make_q(25, 8));  // 5^2 / (4*2)
    CHECK(large_prime_upper(c) == make_q(125, 1));  // (5/2)*2*1*25
  }
  SUBCASE("genus two enclosure brackets tightly") {
    BoundContext c = quadratic_ctx();
    c.g = 2;
    c.r = 3;
    c.ell = 3;
    Enclosure lower = large_prime_lower(c);
    CHECK_FALSE(lower.exact());
    CHECK(lower.lo > 0);
    CHECK(lower.lo < lower.hi);
    CHECK(lower.hi - lower.lo < lower.hi * make_q(1, 100000));
    // 27 / (8*sqrt(2)) is between 2 and 3
    CHECK(lower.lo > 2);
    CHECK(lower.hi < 3);
  }
}

TEST_CASE("index bound formulas") {
  BoundContext c = quadratic_ctx();
  c.g = 2;
  c.r = 2;
  c.muE = 2;
  c.hK = 3;
  c.orderF = 6;
  c.degKoverEstar = 2;
  c.ell = 3;
  c.goodReduction = false;
  c.unramifiedE = false;
  c.unramifiedK = false;

  CHECK(index_bound_galois_in_mt(c) == 6);    // muE*hK
  CHECK(index_bound_mt_stated(c) == 2592);    // 1*2*6^4
  CHECK(index_bound_mt_sharper(c) == 648);    // 1*2*6^2*3^2
  CHECK(index_bound_mt_sharper(c) <= index_bound_mt_stated(c));

  // 3 divides |F| = 6, so the divisibility route is closed even unramified
  c.unramifiedE = true;
  CHECK_FALSE(index_divisibility_applicable(c));
  c.orderF = 5;
  CHECK(index_divisibility_applicable(c));
  CHECK(index_divisibility_modulus(c, false) == 10);
  CHECK(index_divisibility_modulus(c, true) == 5);

  c.goodReduction = true;
  CHECK(mod_ell_divisibility_applicable(c));
  CHECK(mod_ell_divisibility_modulus(c, false) == 10);
  CHECK(mod_ell_divisibility_modulus(c, true) == 5);
  c.unramifiedE = false;
  CHECK_FALSE(mod_ell_divisibility_applicable(c));
}

TEST_CASE("best index upper composes only stated bounds") {
  BoundContext c = quadratic_ctx();
  c.g = 2;
  c.r = 2;
  c.orderF = 5;
  c.ell = 3;
  c.degKoverEstar = 2;
  c.unramifiedE = false;
  c.unramifiedK = false;
  CHECK(best_index_upper(c) == 1250);  // stated 1*2*5^4
  c.unramifiedE = true;
  CHECK(best_index_upper(c) == 10);    // divisibility modulus wins
  c.unramifiedK = true;
  CHECK(best_index_upper(c) == 5);     // degree factor dropped
}

TEST_CASE("surface specialization values") {
  {
    std::vector<BoundEntry> entries = division_field_bounds(surface_ctx(3, 1));
    const BoundEntry& w = find_entry(entries, "division-degree-window");
    CHECK(w.applicable);
    CHECK(value_of(w, "mtOrderLower") == "8");
    CHECK(value_of(w, "mtOrderUpper") == "144");
    CHECK(value_of(w, "indexUpper") == "1");
    CHECK(value_of(w, "lowerInt") == "8");
    CHECK(value_of(w, "upperInt") == "1440");

    const BoundEntry& s = find_entry(entries, "surface-degree-lower");
    CHECK(s.applicable);
    CHECK(value_of(s, "lower") == "8");

    CHECK_FALSE(find_entry(entries, "quadratic-equality").applicable);
  }
  {
    std::vector<BoundEntry> entries = division_field_bounds(surface_ctx(5, 2));
    const BoundEntry& s = find_entry(entries, "surface-degree-lower");
    CHECK(s.applicable);
    CHECK(value_of(s, "lower") == "8000");  // (4/5)^3 * 5^6
  }
  {
    // degenerate rank closes the window and the surface entry
    BoundContext c = surface_ctx(3, 1);
    c.r = 2;
    std::vector<BoundEntry> entries = division_field_bounds(c);
    CHECK_FALSE(find_entry(entries, "division-degree-window").applicable);
    CHECK_FALSE(find_entry(entries, "surface-degree-lower").applicable);
  }
}

TEST_CASE("quadratic equality case") {
  std::vector<BoundEntry> entries = division_field_bounds(quadratic_ctx());
  const BoundEntry& q = find_entry(entries, "quadratic-equality");
  CHECK(q.applicable);
  CHECK(value_of(q, "modulus") == "1");

  const BoundEntry& w = find_entry(entries, "division-degree-window");
  CHECK(w.applicable);
  // special window [16,50] meets the torus window [16,36]
  CHECK(value_of(w, "mtOrderLower") == "16");
  CHECK(value_of(w, "mtOrderUpper") == "36");
  CHECK(value_of(w, "lowerInt") == "16");
  CHECK(value_of(w, "upperInt") == "72");

  BoundContext noGood = quadratic_ctx();
  noGood.goodReduction = false;
  std::vector<BoundEntry> e2 = division_field_bounds(noGood);
  CHECK_FALSE(find_entry(e2, "quadratic-equality").applicable);
}

TEST_CASE("window bounds are monotone in the level") {
  mpz_class prevLo = 0, prevHi = 0;
  for (int n = 1; n <= 3; ++n) {
    std::vector<BoundEntry> entries = division_field_bounds(surface_ctx(3, n));
    const BoundEntry& w = find_entry(entries, "division-degree-window");
    mpz_class lo(value_of(w, "lowerInt"));
    mpz_class hi(value_of(w, "upperInt"));
    CHECK(lo > prevLo);
    CHECK(hi > prevHi);
    CHECK(lo <= hi);
    prevLo = lo;
    prevHi = hi;
  }
}

TEST_CASE("full report carries every entry") {
  std::vector<BoundEntry> entries = full_bound_report(surface_ctx(3, 1));
  const char* ids[] = {"ellpart-orderF",
                       "torus-good-reduction",
                       "torus-order-window",
                       "mt-order-window",
                       "degree-window-large-prime",
                       "index-galois-in-mt",
                       "index-mt-over-galois",
                       "index-mt-over-galois-sharper",
                       "index-divisibility-unramified",
                       "index-divisibility-mod-ell",
                       "division-degree-window",
                       "surface-degree-lower",
                       "quadratic-equality"};
  CHECK(entries.size() == 13);
  for (const char* id : ids) {
    const BoundEntry& e = find_entry(entries, id);
    CHECK(!e.kind.empty());
    CHECK(!e.claim.empty());
    CHECK(!e.payload.empty());
  }
  // 3 does not divide 125, so the torus window applies without flags
  CHECK(find_entry(entries, "torus-order-window").applicable);
  CHECK(value_of(find_entry(entries, "torus-order-window"), "lower") == "8");
  CHECK(value_of(find_entry(entries, "torus-order-window"), "upper") == "64");

  // 5 divides 125 and no unramified flag is set
  std::vector<BoundEntry> e52 = full_bound_report(surface_ctx(5, 2));
  CHECK_FALSE(find_entry(e52, "torus-order-window").applicable);
}
