#include <numeric>
#include <random>

#include "doctest.h"
#include "friable/arith.hpp"
#include "friable/error.hpp"
#include "friable/mwitness.hpp"
#include "oracles.hpp"

using namespace friable;
using V = std::vector<std::uint64_t>;

namespace {

// Smallest positive solution by enumeration.
std::uint64_t crt_by_enumeration(const std::vector<Congruence>& sys) {
  std::uint64_t m = 1;
  for (const auto& c : sys) m *= c.modulus;
  for (std::uint64_t x = 1; x <= m; ++x) {
    bool ok = true;
    for (const auto& c : sys) ok = ok && x % c.modulus == c.residue;
    if (ok) return x;
  }
  return 0;
}

V random_b(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi, std::size_t max_size) {
  std::set<std::uint64_t> s;
  const std::size_t size = 2 + rng() % (max_size - 1);
  while (s.size() < size) s.insert(lo + rng() % (hi - lo + 1));
  return {s.begin(), s.end()};
}

}  // namespace

TEST_CASE("crt_solve examples") {
  auto s = crt_solve({{0, 3}, {0, 5}, {0, 4}});
  CHECK(s.x0 == 60);
  CHECK(s.modulus == 60);
  s = crt_solve({{1, 2}});
  CHECK(s.x0 == 1);
  s = crt_solve({{2, 3}, {3, 5}});
  CHECK(s.x0 == 8);
  CHECK(s.modulus == 15);
  CHECK_THROWS_AS(crt_solve({{0, 4}, {1, 6}}), ContractViolation);
  CHECK_THROWS_AS(crt_solve({{5, 4}}), ContractViolation);
  CHECK_THROWS_AS(crt_solve({}), ContractViolation);
}

TEST_CASE("crt_solve matches enumeration on random coprime systems") {
  std::mt19937_64 rng(99);
  const V mods{3, 4, 5, 7, 11, 13, 17};
  for (int i = 0; i < 500; ++i) {
    std::vector<Congruence> sys;
    for (auto m : mods) {
      if (rng() % 2) sys.push_back({rng() % m, m});
    }
    if (sys.empty()) continue;
    REQUIRE(crt_solve(sys).x0 == crt_by_enumeration(sys));
  }
}

TEST_CASE("build_plan worked instances") {
  auto p = build_plan({1, 2});
  CHECK(p.p_set == V{4});
  CHECK(p.q1 == 3);
  CHECK(p.q2 == 5);
  CHECK(p.x0 == 60);
  CHECK(p.n_cap == 60);
  CHECK(p.prog_step == 120);
  CHECK(p.prog_offset == 121);

  // q = 2 would divide b2 - 1 = 2 and break the gcd condition, so q = 5, 7.
  p = build_plan({1, 3});
  CHECK(p.p_set == V{3});
  CHECK(p.q1 == 5);
  CHECK(p.q2 == 7);
  CHECK(p.x0 == 105);
  CHECK(p.n_cap == 105);
  CHECK(p.prog_step == 315);
  CHECK(p.prog_offset == 317);

  p = build_plan({1, 2, 3});
  CHECK(p.p_set == V{3, 4});
  CHECK(p.q1 == 5);
  CHECK(p.q2 == 7);
  CHECK(p.x0 == 420);
  CHECK(p.prog_step == 840);
  CHECK(p.prog_offset == 841);
  CHECK(std::gcd(p.prog_step, p.prog_offset) == 1);

  // b2 ≡ 3 mod 4 with 4 ∈ P: x0 ≡ 1 (mod 4) keeps the offset odd.
  p = build_plan({1, 3, 4});
  CHECK(p.x0 % 4 == 1);
  CHECK(std::gcd(p.prog_step, p.prog_offset) == 1);
}

TEST_CASE("build_plan invariants hold for every B ⊆ [1, 30] with 1 ∈ B, |B| <= 4") {
  std::size_t plans = 0;
  V cur{1};
  auto visit = [&](auto&& self, std::uint64_t next) -> void {
    if (cur.size() >= 2) {
      const auto plan = build_plan(cur);
      REQUIRE_FALSE(check_plan(plan).has_value());
      REQUIRE(std::gcd(plan.prog_step, plan.prog_offset) == 1);
      for (auto q : {plan.q1, plan.q2}) {
        REQUIRE(plan.x0 % q == 0);
        REQUIRE(plan.n_cap % q == 0);
      }
      // n + 1 is 1 or 2 modulo every member of P, so no b_i (i >= 2) divides it.
      for (std::uint64_t t = 0; t < 3; ++t) {
        const std::uint64_t n = t * plan.n_cap + plan.x0;
        for (std::size_t i = 1; i < cur.size(); ++i) REQUIRE((n + 1) % cur[i] != 0);
      }
      ++plans;
    }
    if (cur.size() == 4) return;
    for (std::uint64_t v = next; v <= 30; ++v) {
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
    }
  };
  visit(visit, 2);
  CHECK(plans == 29 + 406 + 3654);
}

TEST_CASE("progression identity b2(tN + x0 + 1) - 1 = step t + offset on random plans") {
  std::mt19937_64 rng(1234);
  for (int i = 0; i < 100; ++i) {
    V b = random_b(rng, 2, 60, 4);
    b.insert(b.begin(), 1);
    const auto plan = build_plan(b);
    for (std::uint64_t t : {std::uint64_t{0}, std::uint64_t{1}, rng() % 100000}) {
      REQUIRE(plan.shifted_value(t) == plan.progression_value(t));
      // Same identity expanded by hand.
      const unsigned __int128 lhs =
          static_cast<unsigned __int128>(b[1]) * (t * plan.n_cap + plan.x0 + 1) - 1;
      const unsigned __int128 rhs =
          static_cast<unsigned __int128>(b[1]) * plan.n_cap * t + (b[1] * (plan.x0 + 1) - 1);
      REQUIRE(lhs == rhs);
    }
  }
}

TEST_CASE("multiplicative_witness non-unit branch") {
  const auto w = multiplicative_witness({2, 3}, 10, 0);
  REQUIRE(w);
  CHECK(w->branch == WitnessBranch::NonUnit);
  CHECK(w->n == 12);
  CHECK(w->checks.all());
  CHECK(w->checks.non_divisible == std::vector<bool>{true, true});
}

TEST_CASE("multiplicative_witness unit branch replays") {
  auto w = multiplicative_witness({1, 2}, 2, 1000);
  REQUIRE(w);
  CHECK(w->branch == WitnessBranch::Unit);
  CHECK(w->t == 1);
  CHECK(w->n == 120);
  CHECK(oracle::is_prime(241));
  CHECK(w->checks.shifted_prime == true);
  CHECK(w->checks.all());

  w = multiplicative_witness({1, 3}, 2, 1000);
  REQUIRE(w);
  CHECK(w->t == 0);
  CHECK(w->n == 105);
  CHECK(oracle::is_prime(3 * 106 - 1));
  CHECK_FALSE(w->transcript.empty());
}

TEST_CASE("multiplicative_witness respects n0 and the t cap") {
  const auto w = multiplicative_witness({1, 2}, 10000, 100000);
  REQUIRE(w);
  CHECK(w->n > 10000);
  CHECK(w->checks.all());
  // Progression 120 t + 121 at t = 0 is 121 = 11^2; the only t allowed is 0.
  CHECK_FALSE(multiplicative_witness({1, 2}, 2, 0).has_value());
  CHECK_THROWS_AS(multiplicative_witness({2}, 10, 10), ContractViolation);
  CHECK_THROWS_AS(multiplicative_witness({3, 2}, 10, 10), ContractViolation);
  CHECK_THROWS_AS(multiplicative_witness({2, 3}, 1, 10), ContractViolation);
}

TEST_CASE("recheck detects tampering") {
  auto w = *multiplicative_witness({1, 4, 6}, 50, 100000);
  CHECK(recheck(w).all());
  w.n += 1;
  CHECK_FALSE(recheck(w).all());
}

TEST_CASE("non-unit branch: n ≡ 0 mod every b_i, so gcd(n + 1, b_i) < b_i") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const V b = random_b(rng, 2, 40, 4);
    const auto w = multiplicative_witness(b, 2 + rng() % 1000, 0);
    REQUIRE(w);
    for (auto bi : b) {
      REQUIRE(w->n % bi == 0);
      REQUIRE(std::gcd(w->n + 1, bi) < bi);
    }
    REQUIRE(recheck(*w).all());
  }
}
