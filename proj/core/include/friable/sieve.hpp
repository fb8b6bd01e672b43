#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace friable {

struct SieveOptions {
  /// Upper bound on the bitset size in bytes.
  std::uint64_t max_bytes = std::uint64_t{1} << 31;
  /// Worker threads for segment construction; 0 picks hardware concurrency.
  unsigned threads = 1;
};

/// Exact primality bits for every integer in [0, limit].
///
/// Built with a segmented sieve of Eratosthenes (2^20-bit segments). The
/// result is immutable and safe to share between readers. Asking about a
/// number above limit throws ContractViolation.
class PrimeSieve {
 public:
  static constexpr std::uint64_t kSegmentBits = std::uint64_t{1} << 20;

  explicit PrimeSieve(std::uint64_t limit, const SieveOptions& options = {});

  std::uint64_t limit() const { return limit_; }
  bool is_prime(std::uint64_t n) const;

  /// Number of primes in [0, limit].
  std::uint64_t count() const;
  /// Primes in [lo, hi], hi clamped to limit.
  std::vector<std::uint64_t> primes(std::uint64_t lo, std::uint64_t hi) const;
  /// Primes in [0, limit].
  std::vector<std::uint64_t> primes() const { return primes(0, limit_); }

  /// Raw words; bit i of word j is the integer 64j + i.
  std::span<const std::uint64_t> words() const { return words_; }

  /// Cache file: "PSV1", little-endian u64 limit, then the bitset bytes
  /// (bit i of byte j is the integer 8j + i).
  void save(const std::filesystem::path& path) const;
  static PrimeSieve load(const std::filesystem::path& path);

  friend bool operator==(const PrimeSieve&, const PrimeSieve&) = default;

 private:
  PrimeSieve() = default;
  std::uint64_t limit_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Plain sieve for small bounds (base primes, trial division tables).
std::vector<std::uint32_t> small_primes(std::uint32_t limit);

}  // namespace friable
