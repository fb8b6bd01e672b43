#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace friable {

// Every value handled by the library stays at or below this cap so that
// products of two residues fit comfortably in 128-bit intermediates.
inline constexpr std::uint64_t kValueCap = std::uint64_t{1} << 63;

/// A caller broke a documented precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A requested computation exceeds a configured resource budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An intermediate value left the supported range [0, kValueCap].
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// An internal postcondition failed. Seeing one means a bug, not bad input.
class AssertionFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw ContractViolation(what);
}

inline void ensure(bool cond, const std::string& what) {
  if (!cond) throw AssertionFailure(what);
}

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > kValueCap || b > kValueCap - a) {
    throw OverflowError("sum exceeds 2^63");
  }
  return a + b;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  if (p > kValueCap) throw OverflowError("product exceeds 2^63");
  return static_cast<std::uint64_t>(p);
}

}  // namespace friable
