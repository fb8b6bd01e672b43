#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "friable/integer_set.hpp"
#include "friable/sets.hpp"

namespace friable {

/// Pairwise coprime generators Γ = {n_1, ..., n_s}, each > 1, and the
/// multiplicative semigroup {Γ} they generate (1 included).
class GammaSemigroup {
 public:
  /// Throws ContractViolation naming the first non-coprime pair.
  explicit GammaSemigroup(std::vector<std::uint64_t> generators);

  /// Comma-separated generators, e.g. "2,3".
  static GammaSemigroup parse(const std::string& csv);

  const std::vector<std::uint64_t>& generators() const { return gens_; }
  bool contains(std::uint64_t x) const;
  std::string to_string() const;

  friend bool operator==(const GammaSemigroup&, const GammaSemigroup&) = default;

 private:
  std::vector<std::uint64_t> gens_;
};

/// An element of {Γ} with the set of generators dividing it as a bitmask.
/// Two elements are coprime exactly when their masks are disjoint.
struct SemigroupElement {
  std::uint64_t value;
  std::uint64_t mask;
};

/// Elements of {Γ} up to limit, ascending.
std::vector<SemigroupElement> semigroup_elements(const GammaSemigroup& g,
                                                 std::uint64_t limit);

/// {Γ} ∩ [1, limit], window [1, limit].
IntegerSet enumerate_semigroup(const GammaSemigroup& g, std::uint64_t limit);

/// H_k (sums of exactly k pairwise coprime elements of {Γ}) or, when
/// cumulative, H_{<=k} = H_1 ∪ ... ∪ H_k, truncated to [1, limit].
/// Repeated 1s are allowed since gcd(1, 1) = 1.
IntegerSet h_family(const GammaSemigroup& g, unsigned k, bool cumulative,
                    std::uint64_t limit);

/// Like h_family but without the coprimality requirement (H*_k, H*_{<=k}).
IntegerSet h_star_family(const GammaSemigroup& g, unsigned k, bool cumulative,
                         std::uint64_t limit);

struct ExceptionReport {
  std::uint64_t limit = 0;
  bool pass = false;
  std::optional<std::uint64_t> first_mismatch;
  IntegerSet sums;      // H_{<=3} for Γ = {2}
  IntegerSet products;  // {1, 2} · {2^β, 2^β + 1}
};

/// Checks H_{<=3} = {1,2}·{2^β, 2^β+1 : β >= 0} for Γ = {2} on [1, limit].
ExceptionReport verify_exception(std::uint64_t limit);

struct GammaSplit {
  std::uint64_t cofactor;    // divisible by no generator
  std::uint64_t gamma_part;  // largest divisor of a lying in {Γ}
  friend bool operator==(const GammaSplit&, const GammaSplit&) = default;
};

GammaSplit strip_gamma_part(std::uint64_t a, const GammaSemigroup& g);

struct MPrimitivityReport {
  GammaSemigroup gamma;
  unsigned k = 0;
  bool cumulative = false;
  std::uint64_t limit = 0;
  SearchBounds bounds;
  std::size_t target_size = 0;
  std::vector<DecompositionCandidate> candidates;
};

/// Runs the multiplicative decomposition search on the H-family truncation.
MPrimitivityReport mprimitivity_scan(const GammaSemigroup& g, unsigned k,
                                     bool cumulative, std::uint64_t limit,
                                     const SearchBounds& bounds);

}  // namespace friable
