#include <random>

#include "doctest.h"
#include "friable/error.hpp"
#include "friable/semigroup.hpp"
#include "oracles.hpp"

using namespace friable;
using V = std::vector<std::uint64_t>;

TEST_CASE("GammaSemigroup validation") {
  CHECK(GammaSemigroup::parse("3,2").generators() == V{2, 3});
  try {
    GammaSemigroup::parse("2,6,35");
    FAIL("expected rejection");
  } catch (const ContractViolation& e) {
    CHECK(std::string(e.what()).find("2 and 6") != std::string::npos);
  }
  CHECK_THROWS_AS(GammaSemigroup({1, 2}), ContractViolation);
  CHECK_THROWS_AS(GammaSemigroup({}), ContractViolation);
  CHECK_THROWS_AS(GammaSemigroup::parse("2,x"), ContractViolation);
  CHECK_THROWS_AS(GammaSemigroup::parse("2,-3"), ContractViolation);
  CHECK(GammaSemigroup({6, 35}).contains(36 * 35));
  CHECK_FALSE(GammaSemigroup({6, 35}).contains(12));
}

TEST_CASE("enumerate_semigroup examples") {
  CHECK(enumerate_semigroup(GammaSemigroup({2}), 20).vec() == V{1, 2, 4, 8, 16});
  CHECK(enumerate_semigroup(GammaSemigroup({2, 3}), 20).vec() ==
        V{1, 2, 3, 4, 6, 8, 9, 12, 16, 18});
  CHECK(enumerate_semigroup(GammaSemigroup({6, 35}), 40).vec() == V{1, 6, 35, 36});
}

TEST_CASE("enumerate_semigroup is closed and matches the closure oracle") {
  for (const auto& gens : {V{2}, V{2, 3}, V{5, 7, 11}, V{6, 35}, V{4, 9, 25}}) {
    const GammaSemigroup g(gens);
    const auto s = enumerate_semigroup(g, 100000);
    REQUIRE(s.vec() == oracle::semigroup(gens, 100000));
    for (auto x : s) {
      for (auto y : s) {
        if (x * y > 100000) break;
        REQUIRE(s.contains(x * y));
      }
    }
  }
}

TEST_CASE("h_family examples") {
  CHECK(h_family(GammaSemigroup({2}), 2, false, 20).vec() == V{2, 3, 5, 9, 17});
  CHECK(h_family(GammaSemigroup({2, 3}), 2, false, 20).vec() ==
        V{2, 3, 4, 5, 7, 9, 10, 11, 13, 17, 19});
  const GammaSemigroup g({3, 10});
  CHECK(h_family(g, 1, false, 5000) == enumerate_semigroup(g, 5000));
}

TEST_CASE("h_family matches the ordered-tuple oracle") {
  for (const auto& gens : {V{2}, V{3}, V{2, 3}, V{2, 5, 7}, V{6, 35}}) {
    const GammaSemigroup g(gens);
    for (unsigned k = 1; k <= 3; ++k) {
      for (bool cum : {false, true}) {
        REQUIRE(h_family(g, k, cum, 3000).vec() == oracle::h_family(gens, k, cum, 3000));
        REQUIRE(h_star_family(g, k, cum, 3000).vec() ==
                oracle::h_family(gens, k, cum, 3000, false));
      }
    }
  }
}

TEST_CASE("h_family monotonicity") {
  for (const auto& gens : {V{2}, V{2, 3}, V{3, 4, 5}}) {
    const GammaSemigroup g(gens);
    for (unsigned k = 1; k <= 4; ++k) {
      const auto hk = h_family(g, k, false, 50000);
      const auto le = h_family(g, k, true, 50000);
      const auto le_next = h_family(g, k + 1, true, 50000);
      REQUIRE(std::includes(le.begin(), le.end(), hk.begin(), hk.end()));
      REQUIRE(std::includes(le_next.begin(), le_next.end(), le.begin(), le.end()));
    }
  }
}

TEST_CASE("starred families absorb {Γ}: {Γ}·H*_k ⊆ H*_k") {
  for (const auto& gens : {V{2}, V{2, 3}}) {
    const GammaSemigroup g(gens);
    for (unsigned k = 2; k <= 3; ++k) {
      const std::uint64_t limit = 20000, c = 64;
      const auto star = h_star_family(g, k, false, limit);
      const auto prod = productset(enumerate_semigroup(g, c), star.restrict(1, limit / c));
      const auto inside = prod.restrict(1, limit);
      REQUIRE(std::includes(star.begin(), star.end(), inside.begin(), inside.end()));
      REQUIRE(windowed_equal(prod, star, 1, limit / c).equal);
    }
  }
}

TEST_CASE("verify_exception") {
  auto r = verify_exception(20);
  CHECK(r.pass);
  CHECK(r.sums.vec() == V{1, 2, 3, 4, 5, 6, 8, 9, 10, 16, 17, 18});
  CHECK(r.products.vec() == r.sums.vec());
  r = verify_exception(8);
  CHECK(r.pass);
  CHECK(r.sums.vec() == V{1, 2, 3, 4, 5, 6, 8});
  for (std::uint64_t lim = 8; lim < 3000; lim += 97) CHECK(verify_exception(lim).pass);
  CHECK_THROWS_AS(verify_exception(7), ContractViolation);
}

TEST_CASE("strip_gamma_part examples") {
  CHECK(strip_gamma_part(60, GammaSemigroup({2, 3})) == GammaSplit{5, 12});
  CHECK(strip_gamma_part(252, GammaSemigroup({6, 35})) == GammaSplit{7, 36});
  CHECK(strip_gamma_part(7, GammaSemigroup({2, 3})) == GammaSplit{7, 1});
  CHECK_THROWS_AS(strip_gamma_part(0, GammaSemigroup({2})), ContractViolation);
}

TEST_CASE("strip_gamma_part identities on random inputs") {
  std::mt19937_64 rng(31337);
  const std::vector<V> gammas{{2}, {2, 3}, {6, 35}, {4, 9, 25, 7}, {10, 21}};
  for (int i = 0; i < 10000; ++i) {
    const GammaSemigroup g(gammas[i % gammas.size()]);
    const std::uint64_t a = 1 + rng() % 1000000000;
    const auto [a0, d] = strip_gamma_part(a, g);
    REQUIRE(a0 * d == a);
    for (auto n : g.generators()) REQUIRE(a0 % n != 0);
    REQUIRE(g.contains(d));
    REQUIRE(strip_gamma_part(a0, g) == GammaSplit{a0, 1});
    // Maximality: d times any generator no longer divides a.
    for (auto n : g.generators()) REQUIRE(a % (d * n) != 0);
  }
}

TEST_CASE("mprimitivity_scan finds the exceptional factorization") {
  const auto r = mprimitivity_scan(GammaSemigroup({2}), 3, true, 1 << 16, {2, 2});
  REQUIRE(r.candidates.size() == 1);
  CHECK(r.candidates[0].b == V{1, 2});
  CHECK(recheck_candidate(h_family(GammaSemigroup({2}), 3, true, 1 << 16), r.candidates[0]));
}

TEST_CASE("mprimitivity_scan finds nothing for H_2 at small scale") {
  CHECK(mprimitivity_scan(GammaSemigroup({2, 3}), 2, false, 20000, {3, 50}).candidates.empty());
  CHECK(mprimitivity_scan(GammaSemigroup({2}), 2, false, 20000, {3, 50}).candidates.empty());
  CHECK_THROWS_AS(mprimitivity_scan(GammaSemigroup({2}), 1, false, 100, {2, 2}),
                  ContractViolation);
}
