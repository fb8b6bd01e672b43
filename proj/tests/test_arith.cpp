#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "friable/arith.hpp"
#include "friable/error.hpp"
#include "friable/sieve.hpp"
#include "oracles.hpp"

using namespace friable;

TEST_CASE("is_prime edge cases and small values") {
  CHECK_FALSE(is_prime(0));
  CHECK_FALSE(is_prime(1));
  CHECK(is_prime(2));
  CHECK(is_prime(241));
  CHECK_FALSE(is_prime(121));
  CHECK_FALSE(is_prime(1679));  // 23 * 73, just under the 41^2 shortcut
  CHECK_FALSE(is_prime(1681));  // 41^2
}

TEST_CASE("is_prime agrees with trial division below 10^5 and the sieve") {
  const PrimeSieve sieve(100000);
  for (std::uint64_t n = 0; n <= 100000; ++n) {
    REQUIRE(is_prime(n) == sieve.is_prime(n));
    if (n < 20000) REQUIRE(is_prime(n) == oracle::is_prime(n));
  }
}

TEST_CASE("is_prime on large known values") {
  CHECK(is_prime(18446744073709551557ULL));   // largest 64-bit prime
  CHECK_FALSE(is_prime(18446744073709551615ULL));
  CHECK_FALSE(is_prime(3215031751ULL));        // strong pseudoprime to 2,3,5,7
  CHECK_FALSE(is_prime(3825123056546413051ULL));  // spsp to bases 2..23
  CHECK(is_prime((std::uint64_t{1} << 61) - 1));
  CHECK_FALSE(is_prime(4294967297ULL));        // 641 * 6700417
}

TEST_CASE("sieve counts") {
  CHECK(PrimeSieve(10).primes() == std::vector<std::uint64_t>{2, 3, 5, 7});
  CHECK(PrimeSieve(100).count() == 25);
  const PrimeSieve big(1000000);
  const auto ref = oracle::eratosthenes(1000000);
  CHECK(big.count() == static_cast<std::uint64_t>(std::count(ref.begin(), ref.end(), true)));
  CHECK(big.count() == 78498);
}

TEST_CASE("sieve spanning several segments matches the plain sieve") {
  const std::uint64_t limit = 3 * PrimeSieve::kSegmentBits + 12345;
  const PrimeSieve s(limit);
  const auto ref = oracle::eratosthenes(limit);
  for (std::uint64_t n = 0; n <= limit; ++n) REQUIRE(s.is_prime(n) == ref[n]);
}

TEST_CASE("parallel construction is bit-identical") {
  const std::uint64_t limit = 5 * PrimeSieve::kSegmentBits + 777;
  const PrimeSieve a(limit, {.threads = 1});
  const PrimeSieve b(limit, {.threads = 4});
  CHECK(a == b);
}

TEST_CASE("sieve contract and budget") {
  const PrimeSieve s(50);
  CHECK_THROWS_AS((void)s.is_prime(51), ContractViolation);
  CHECK_THROWS_AS(PrimeSieve(0), ContractViolation);
  CHECK_THROWS_AS(PrimeSieve(1 << 20, {.max_bytes = 1024}), ResourceError);
}

TEST_CASE("sieve cache round trip and validation") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto path = dir / "friable_test_sieve.psv";
  const PrimeSieve s(100003);
  s.save(path);
  {
    std::ifstream is(path, std::ios::binary);
    char head[4];
    is.read(head, 4);
    CHECK(std::string(head, 4) == "PSV1");
    unsigned char lim[8];
    is.read(reinterpret_cast<char*>(lim), 8);
    CHECK(lim[0] == (100003 & 0xFF));
    CHECK(lim[1] == ((100003 >> 8) & 0xFF));
    unsigned char b0 = 0;
    is.read(reinterpret_cast<char*>(&b0), 1);
    CHECK(b0 == 0b10101100);  // 2, 3, 5, 7
    CHECK(std::filesystem::file_size(path) == 4 + 8 + 100003 / 8 + 1);
  }
  CHECK(PrimeSieve::load(path) == s);

  // Truncated payload.
  std::filesystem::resize_file(path, 4 + 8 + 10);
  CHECK_THROWS_AS(PrimeSieve::load(path), ContractViolation);
  // Bad magic.
  {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    os << "PSV2xxxxxxxx";
  }
  CHECK_THROWS_AS(PrimeSieve::load(path), ContractViolation);
  std::filesystem::remove(path);
}

TEST_CASE("greatest_prime_factor") {
  CHECK(greatest_prime_factor(1) == 1);
  CHECK(greatest_prime_factor(12) == 3);
  CHECK(greatest_prime_factor(1024) == 2);
  for (std::uint64_t n = 2; n <= 100000; ++n) {
    const auto p = greatest_prime_factor(n);
    REQUIRE(is_prime(p));
    REQUIRE(n % p == 0);
    const auto f = factorize(n);
    REQUIRE(f.back().prime == p);
    if (n < 5000) REQUIRE(p == oracle::greatest_prime_factor(n));
  }
}

TEST_CASE("factorize") {
  CHECK(factorize(1).empty());
  CHECK(factorize(60) == std::vector<PrimePower>{{2, 2}, {3, 1}, {5, 1}});
  CHECK(factorize(121) == std::vector<PrimePower>{{11, 2}});
  CHECK(factorize(4294967297ULL) == std::vector<PrimePower>{{641, 1}, {6700417, 1}});
  // Semiprime with both factors above the trial-division table.
  const std::uint64_t p = 1000000007, q = 998244353;
  CHECK(factorize(p * q) == std::vector<PrimePower>{{q, 1}, {p, 1}});
  CHECK(factorize(std::uint64_t{1} << 63) == std::vector<PrimePower>{{2, 63}});
  CHECK_THROWS_AS(factorize(0), ContractViolation);
  CHECK_THROWS_AS(factorize((std::uint64_t{1} << 63) + 1), ContractViolation);
}

TEST_CASE("factorize round trip on random 63-bit inputs") {
  std::mt19937_64 rng(20261019);
  for (int i = 0; i < 10000; ++i) {
    const std::uint64_t n = (rng() >> 1) | 1U;  // < 2^63
    const std::uint64_t m = (rng() >> 1);
    for (std::uint64_t v : {n, m == 0 ? 1 : m}) {
      const auto f = factorize(v);
      unsigned __int128 prod = 1;
      for (std::size_t j = 0; j < f.size(); ++j) {
        REQUIRE(is_prime(f[j].prime));
        if (j) REQUIRE(f[j - 1].prime < f[j].prime);
        for (unsigned e = 0; e < f[j].exponent; ++e) prod *= f[j].prime;
      }
      REQUIRE(prod == v);
    }
  }
}

TEST_CASE("smooth_set examples") {
  CHECK(smooth_set(YPolicy::composites(), 20).vec() ==
        std::vector<std::uint64_t>{4, 6, 8, 9, 10, 12, 14, 15, 16, 18, 20});
  CHECK(smooth_set(YPolicy::fixed_bound(2), 40).vec() ==
        std::vector<std::uint64_t>{1, 2, 4, 8, 16, 32});
  CHECK(smooth_set(YPolicy::fixed_bound(3), 20).vec() ==
        std::vector<std::uint64_t>{1, 2, 3, 4, 6, 8, 9, 12, 16, 18});
  const auto s = smooth_set(YPolicy::fixed_bound(3), 20);
  CHECK(s.lo() == 1);
  CHECK(s.hi() == 20);
}

TEST_CASE("p+(1) = 1 convention: 1 is smooth except under Composites") {
  CHECK_FALSE(smooth_set(YPolicy::composites(), 10).contains(1));
  CHECK(smooth_set(YPolicy::fixed_bound(1), 10).vec() == std::vector<std::uint64_t>{1});
  CHECK(smooth_set(YPolicy::fixed_bound(0), 10).empty());
  CHECK(smooth_set(YPolicy::log_factor(0.5), 10).contains(1));
}

TEST_CASE("smooth_set agrees with per-n classification") {
  for (const auto& pol : {YPolicy::fixed_bound(5), YPolicy::fixed_bound(97),
                          YPolicy::log_factor(1.0), YPolicy::log_factor(3.5)}) {
    const auto s = smooth_set(pol, 200000);
    std::size_t idx = 0;
    for (std::uint64_t n = 1; n <= 200000; ++n) {
      const bool want = n < 30000
                            ? static_cast<double>(oracle::greatest_prime_factor(n)) <= pol.threshold(n)
                            : pol.is_smooth(n);
      const bool got = idx < s.size() && s.vec()[idx] == n;
      if (got) ++idx;
      REQUIRE_MESSAGE(want == got, pol.to_string() << " n=" << n);
    }
  }
}

TEST_CASE("Composites policy partitions [1, X] with the primes and {1}") {
  const std::uint64_t x = 100000;
  const auto comp = smooth_set(YPolicy::composites(), x);
  const PrimeSieve sieve(x);
  CHECK(comp.size() + sieve.count() + 1 == x);
  for (auto n : comp) REQUIRE_FALSE(sieve.is_prime(n));
}

TEST_CASE("shifted_smooth_set") {
  CHECK(shifted_smooth_set(YPolicy::composites(), 20).vec() ==
        std::vector<std::uint64_t>{5, 7, 9, 10, 11, 13, 15, 16, 17, 19});
  CHECK(shifted_smooth_set(YPolicy::fixed_bound(2), 10).vec() ==
        std::vector<std::uint64_t>{2, 3, 5, 9});
  CHECK(shifted_smooth_set(YPolicy::fixed_bound(2), 2).vec() ==
        std::vector<std::uint64_t>{2});
  for (const auto& pol : {YPolicy::composites(), YPolicy::fixed_bound(7),
                          YPolicy::log_factor(2.0)}) {
    const auto g = shifted_smooth_set(pol, 5000);
    const auto f = smooth_set(pol, 4999);
    REQUIRE(g.size() == f.size());
    for (std::size_t i = 0; i < f.size(); ++i) REQUIRE(g.vec()[i] == f.vec()[i] + 1);
  }
}

TEST_CASE("YPolicy parsing") {
  CHECK(YPolicy::parse("composites").kind() == YPolicy::Kind::Composites);
  CHECK(YPolicy::parse("fixed:7").bound() == 7);
  CHECK(YPolicy::parse("log:1.5").factor() == doctest::Approx(1.5));
  CHECK(YPolicy::parse("log:1.5").to_string() == "log:1.5");
  CHECK_THROWS_AS(YPolicy::parse("fixed:"), ContractViolation);
  CHECK_THROWS_AS(YPolicy::parse("fixed:3x"), ContractViolation);
  CHECK_THROWS_AS(YPolicy::parse("cubic"), ContractViolation);
  CHECK_THROWS_AS(YPolicy::parse("log:-1"), ContractViolation);
}
