#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "friable/integer_set.hpp"

namespace friable {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Deterministic over the full 64-bit range: trial division by tiny primes,
/// then strong-pseudoprime tests to the first twelve prime bases.
bool is_prime(std::uint64_t n);

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
  friend auto operator<=>(const PrimePower&, const PrimePower&) = default;
};

/// Complete factorization, ascending by prime; empty for n = 1.
/// Requires 1 <= n <= 2^63.
std::vector<PrimePower> factorize(std::uint64_t n);

/// Largest prime factor, with the convention p+(1) = 1.
std::uint64_t greatest_prime_factor(std::uint64_t n);

/// Threshold rule y(n) deciding which n count as y-smooth.
class YPolicy {
 public:
  enum class Kind { Composites, FixedBound, LogFactor };

  /// Any y with n/2 < y(n) < n: the smooth numbers are exactly the composites.
  static YPolicy composites() { return YPolicy(Kind::Composites, 0, 0.0); }
  /// y(n) = bound.
  static YPolicy fixed_bound(std::uint64_t bound) {
    return YPolicy(Kind::FixedBound, bound, 0.0);
  }
  /// y(n) = max(factor * ln n, 2).
  static YPolicy log_factor(double factor);

  /// "composites", "fixed:<y0>" or "log:<c>".
  static YPolicy parse(const std::string& text);

  Kind kind() const { return kind_; }
  std::uint64_t bound() const { return bound_; }
  double factor() const { return factor_; }

  /// Threshold y(n); meaningless for Composites.
  double threshold(std::uint64_t n) const;
  bool is_smooth(std::uint64_t n) const;
  std::string to_string() const;

 private:
  YPolicy(Kind kind, std::uint64_t bound, double factor)
      : kind_(kind), bound_(bound), factor_(factor) {}
  Kind kind_;
  std::uint64_t bound_;
  double factor_;
};

/// F_y ∩ [1, limit], window [1, limit].
IntegerSet smooth_set(const YPolicy& policy, std::uint64_t limit);

/// G_y ∩ [1, limit] = {m + 1 : m ∈ F_y, m + 1 <= limit}, window [1, limit].
IntegerSet shifted_smooth_set(const YPolicy& policy, std::uint64_t limit);

}  // namespace friable
