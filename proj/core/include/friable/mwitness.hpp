#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace friable {

struct Congruence {
  std::uint64_t residue = 0;
  std::uint64_t modulus = 0;
  friend bool operator==(const Congruence&, const Congruence&) = default;
};

struct CrtSolution {
  std::uint64_t x0 = 0;       // smallest solution in [1, modulus]
  std::uint64_t modulus = 0;  // product of the moduli
};

/// Solves x ≡ r_i (mod m_i). Moduli must be >= 2, pairwise coprime, with
/// r_i < m_i; violations throw ContractViolation. OverflowError if the
/// product of moduli passes 2^63.
CrtSolution crt_solve(const std::vector<Congruence>& system);

/// The progression construction for B = {1 = b1 < b2 < ... < bl}.
///
/// P takes the smallest odd prime divisor of each b_i (i >= 2), or 4 when b_i
/// is a power of two. q1 < q2 are the smallest primes outside P that avoid 2
/// when 4 ∈ P and do not divide b2 - 1. The system is x ≡ 0 (mod q1, q2) and,
/// for p ∈ P, x ≡ 1 (mod p) when gcd(p, b2 - 1) > 1, else x ≡ 0 (mod p).
/// Then N = q1 q2 ∏P and b2(tN + x0 + 1) - 1 = (b2 N) t + (b2 (x0 + 1) - 1).
struct CrtWitnessPlan {
  std::vector<std::uint64_t> b;
  std::vector<std::uint64_t> p_set;  // ascending, deduplicated
  std::uint64_t q1 = 0;
  std::uint64_t q2 = 0;
  std::vector<Congruence> system;
  std::uint64_t x0 = 0;
  std::uint64_t n_cap = 0;  // N
  std::uint64_t prog_step = 0;
  std::uint64_t prog_offset = 0;

  /// b2 · (t N + x0 + 1) - 1, evaluated directly.
  unsigned __int128 shifted_value(std::uint64_t t) const;
  /// prog_step · t + prog_offset.
  unsigned __int128 progression_value(std::uint64_t t) const;
};

/// Requires b sorted, strictly increasing, b[0] = 1, |b| >= 2.
/// Throws AssertionFailure if a plan invariant fails.
CrtWitnessPlan build_plan(const std::vector<std::uint64_t>& b);

/// Re-checks every plan invariant; returns a description of the first
/// failure or nullopt.
std::optional<std::string> check_plan(const CrtWitnessPlan& plan);

enum class WitnessBranch { Unit, NonUnit };  // 1 ∈ B / 1 ∉ B

struct MultiplicativeChecks {
  bool n_composite = false;
  bool n_above_n0 = false;
  /// b2 (n + 1) - 1 is prime; unit branch only.
  std::optional<bool> shifted_prime;
  /// b_i ∤ n + 1, for i >= 2 (unit branch) or for all i (non-unit branch).
  std::vector<bool> non_divisible;

  bool all() const;
};

struct MultiplicativeWitness {
  std::vector<std::uint64_t> b;
  WitnessBranch branch = WitnessBranch::NonUnit;
  std::optional<CrtWitnessPlan> plan;
  std::uint64_t t = 0;
  std::uint64_t n0 = 0;
  std::uint64_t n = 0;
  MultiplicativeChecks checks;
  /// Step-by-step derivation a reader can replay by hand.
  std::vector<std::string> transcript;
};

/// 1 ∉ B: n is the smallest multiple of ∏B with n >= n0.
/// 1 ∈ B: scans t upward from the least t >= 0 with tN + x0 > n0, up to
/// t_hi, for a prime progression value; n = tN + x0.
/// Returns nullopt when no t <= t_hi works (a resource cap, not a refutation).
std::optional<MultiplicativeWitness> multiplicative_witness(
    const std::vector<std::uint64_t>& b, std::uint64_t n0, std::uint64_t t_hi);

/// Recomputes every check from scratch with is_prime and division.
MultiplicativeChecks recheck(const MultiplicativeWitness& w);

std::string to_string(WitnessBranch branch);

}  // namespace friable
