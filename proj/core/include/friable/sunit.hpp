#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "friable/integer_set.hpp"
#include "friable/semigroup.hpp"

namespace friable {

/// Reduced fraction with positive denominator.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1);

  /// "p" or "p/q".
  static Rational parse(const std::string& text);
  std::string to_string() const;
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// a_1 x_1 + ... + a_m x_m = 0 with x_i ∈ {Γ}.
struct SUnitEquation {
  std::vector<Rational> coeffs;
  GammaSemigroup gamma;

  /// Requires m >= 2 and no zero coefficient.
  SUnitEquation(std::vector<Rational> coeffs, GammaSemigroup gamma);

  /// Coefficients scaled to coprime integers with the same solution set.
  std::vector<std::int64_t> integer_coeffs() const;
};

struct SolutionClass {
  /// No λ ∈ {Γ} \ {1} divides every coordinate.
  std::vector<std::uint64_t> representative;
  /// Some proper nonempty subsum vanishes.
  bool degenerate = false;
  friend auto operator<=>(const SolutionClass&, const SolutionClass&) = default;
};

/// True iff some proper nonempty subset of terms sums to zero.
bool has_vanishing_subsum(const std::vector<__int128>& terms);

/// All solutions with every x_i <= height, reduced to proportionality classes,
/// sorted by representative. Coefficients and height must stay below 2^40.
std::vector<SolutionClass> solve_sunit(const SUnitEquation& eq,
                                       std::uint64_t height);

struct LSetReport {
  IntegerSet coordinates;
  std::uint64_t solutions = 0;  // non-degenerate solutions seen
};

/// Coordinates of every non-degenerate solution of
/// ε(x_1 + ... + x_l) = η(y_1 + ... + y_h) with each block pairwise coprime,
/// 1 <= l, h <= k, l + h >= 3, coordinates <= height, ε, η ∈ {Γ} up to
/// eps_height. An under-approximation of the finite exceptional set.
LSetReport corollary_l_set(const GammaSemigroup& g, unsigned k,
                           std::uint64_t height, std::uint64_t eps_height);

struct TwoTermReport {
  std::vector<std::pair<unsigned, unsigned>> solutions;  // (α1, α2)
  /// For c != 0: the largest e with n^e | c. Any solution with both exponents
  /// positive has min(α1, α2) <= e.
  std::optional<unsigned> min_exponent_bound;
};

/// Non-negative (α1, α2) <= alpha_cap with t2 n^α1 - t1 n^α2 = c.
/// Throws ContractViolation if n^alpha_cap · max(t1, t2) would pass 2^120.
TwoTermReport solve_two_term(std::uint64_t t2, std::uint64_t t1,
                             std::uint64_t n, std::int64_t c,
                             unsigned alpha_cap);

}  // namespace friable
