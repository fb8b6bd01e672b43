#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "friable/integer_set.hpp"

namespace friable {

/// {x + y : x ∈ b, y ∈ c} with window [lo_b + lo_c, hi_b + hi_c].
/// Throws OverflowError past 2^63.
IntegerSet sumset(const IntegerSet& b, const IntegerSet& c);

/// {x * y : x ∈ b, y ∈ c}; requires every element >= 1.
/// Window is [lo_b * lo_c, hi_b * hi_c] with zero bounds raised to 1.
IntegerSet productset(const IntegerSet& b, const IntegerSet& c);

struct WindowComparison {
  bool equal = true;
  /// Smallest integer in [lo, hi] lying in exactly one of the sets.
  std::optional<std::uint64_t> first_mismatch;
};

/// Compares a and b on [lo, hi]; the interval must sit inside both windows.
WindowComparison windowed_equal(const IntegerSet& a, const IntegerSet& b,
                                std::uint64_t lo, std::uint64_t hi);

enum class DecompositionKind { Additive, Multiplicative };

std::string to_string(DecompositionKind kind);

struct DecompositionCandidate {
  DecompositionKind kind = DecompositionKind::Additive;
  std::vector<std::uint64_t> b;
  /// Canonical maximal complement.
  IntegerSet c;
  std::uint64_t coverage_lo = 0;
  std::uint64_t coverage_hi = 0;

  friend bool operator==(const DecompositionCandidate&,
                         const DecompositionCandidate&) = default;
};

/// Shrunk: the default edge-tolerant window described on decompose_search.
/// Exact: no slack below lo, coverage window is all of [lo, hi], so an
/// accepted B satisfies B ⊕ C_max = target exactly.
enum class WindowMode { Shrunk, Exact };

std::string to_string(WindowMode mode);

struct SearchBounds {
  std::size_t max_b_size = 2;
  std::uint64_t max_b_elem = 1;
  /// 0 picks hardware concurrency.
  unsigned threads = 1;
  WindowMode window = WindowMode::Shrunk;
};

/// Exhaustive windowed search for target = B ⊕ C with |B|, |C| >= 2.
///
/// Additive: B ranges over sets containing 0 drawn from [0, max_b_elem];
/// C_max = {c ∈ [0, hi - max B] : c + β ∈ target or c + β < lo for all β}.
/// The coverage window is [lo + max B, hi - max B].
///
/// Multiplicative: B ranges over sets of divisors of target elements not
/// exceeding max_b_elem; C_max = {c ∈ [1, hi / max B] : c·β ∈ target or
/// c·β < lo for all β}, coverage window [lo · max B, hi / max B].
///
/// B is accepted when every target element in its coverage window lies in
/// B ⊕ C_max, the window holds at least one target element, and |C_max| >= 2.
/// Results come back in lexicographic order of B.
std::vector<DecompositionCandidate> decompose_search(
    const IntegerSet& target, DecompositionKind kind,
    const SearchBounds& bounds);

/// Rebuilds B ⊕ C_max and compares it with target on the coverage window.
bool recheck_candidate(const IntegerSet& target,
                       const DecompositionCandidate& candidate);

/// A = {n : n, n+1, n+3, n+5 all non-prime}, B = {0, 1, 3, 5}; compares
/// (A + B) ∩ [9, limit] against the composites in [9, limit].
struct Theorem1Report {
  std::uint64_t limit = 0;
  bool pass = false;
  std::optional<std::uint64_t> first_mismatch;
  std::uint64_t a_count = 0;          // |A ∩ [1, limit]|
  std::uint64_t sum_count = 0;        // |(A + B) ∩ [9, limit]|
  std::uint64_t composite_count = 0;  // composites in [9, limit]
};

Theorem1Report verify_theorem1(std::uint64_t limit);

}  // namespace friable
