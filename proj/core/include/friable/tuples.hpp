#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "friable/sieve.hpp"

namespace friable {

/// Sorted set of integer offsets; duplicates collapse on construction.
class OffsetTuple {
 public:
  OffsetTuple() = default;
  explicit OffsetTuple(std::vector<std::int64_t> offsets);

  const std::vector<std::int64_t>& offsets() const { return offsets_; }
  std::size_t size() const { return offsets_.size(); }
  std::int64_t min() const { return offsets_.front(); }
  std::int64_t max() const { return offsets_.back(); }
  bool contains(std::int64_t u) const;

  friend bool operator==(const OffsetTuple&, const OffsetTuple&) = default;

 private:
  std::vector<std::int64_t> offsets_;
};

/// True iff no prime p covers every residue class mod p. Only p <= |t| can.
bool is_admissible(const OffsetTuple& t);

/// For every s ∈ b some β ∈ b has β - s ∈ t. With n + t all prime this
/// rules out n - s ∈ A for every s, so n ∉ A + b.
bool covers(const std::vector<std::uint64_t>& b, const OffsetTuple& t);

enum class TripleCase { T1 = 1, T2, T3, T4, T5, T6 };

std::string to_string(TripleCase c);

struct TripleSelection {
  OffsetTuple tuple;
  TripleCase which;
};

/// Case analysis on the parities of b2, b3 and their residues mod 3, producing
/// an admissible tuple that covers B = {0, b2, b3}:
///
///   same parity,  3 | b3        t1 = {-b3, -b2, b3}
///   same parity,  3 ∤ b3        t2 = {-b3, -b2, b2}
///   b2 odd,  b3 even, b2 ≡ b3   t3 = {b2-b3, b3-b2, b2}
///   b2 odd,  b3 even, b2 ≢ b3   t4 = {b2-b3, -b2, b2}
///   b2 even, b3 odd,  b2 ≡ b3   t5 = {b2-b3, b3-b2, b3}
///   b2 even, b3 odd,  b2 ≢ b3   t6 = {-b3, b3-b2, b3}
///
/// Requires 0 < b2 < b3. Throws AssertionFailure if the chosen tuple is not
/// admissible or does not cover B.
TripleSelection select_triple(std::uint64_t b2, std::uint64_t b3);

struct ConstellationFilter {
  bool composite_center = false;
  /// No prime outside the pattern lies strictly between min(n+t) and max(n+t).
  bool consecutive = false;
};

/// All n in [lo, hi] with n + u prime for every u in t. The sieve must reach
/// hi + max(t) (and the next prime check for consecutive is bounded by that).
std::vector<std::uint64_t> find_constellation(const OffsetTuple& t,
                                              std::uint64_t lo,
                                              std::uint64_t hi,
                                              const ConstellationFilter& filter,
                                              const PrimeSieve& sieve);

/// Convenience overload that sieves up to hi + max(t).
std::vector<std::uint64_t> find_constellation(const OffsetTuple& t,
                                              std::uint64_t lo,
                                              std::uint64_t hi,
                                              const ConstellationFilter& filter);

struct AdditiveWitness {
  std::vector<std::uint64_t> b;
  OffsetTuple tuple;
  /// Set for |b| = 3; the pair case always uses {-b2, b2}.
  std::optional<TripleCase> which;
  std::uint64_t n0 = 0;
  std::uint64_t n = 0;
  std::vector<std::uint64_t> primes;  // n + u for u in tuple, ascending
};

/// Looks for composite n in [n0 + max(b), search_hi] with every n + u prime.
/// b must be {0, b2} or {0, b2, b3}; n0 >= 9. nullopt means inconclusive.
std::optional<AdditiveWitness> additive_witness(
    const std::vector<std::uint64_t>& b, std::uint64_t n0,
    std::uint64_t search_hi);

/// Same search against a caller-provided sieve covering search_hi + max(b).
std::optional<AdditiveWitness> additive_witness(
    const std::vector<std::uint64_t>& b, std::uint64_t n0,
    std::uint64_t search_hi, const PrimeSieve& sieve);

/// Independent re-check using is_prime and a direct B × B covering search.
bool validate(const AdditiveWitness& w);

}  // namespace friable
