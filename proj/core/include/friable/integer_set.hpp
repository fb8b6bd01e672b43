#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace friable {

/// A finite sorted set of non-negative integers together with the window
/// [lo, hi] on which it is known to be complete. Elements always lie inside
/// the window; the window stands in for the truncation of an infinite set.
class IntegerSet {
 public:
  IntegerSet() = default;

  /// Sorts and deduplicates. Throws ContractViolation when an element falls
  /// outside [lo, hi] or lo > hi.
  IntegerSet(std::vector<std::uint64_t> elements, std::uint64_t lo,
             std::uint64_t hi);

  /// Window defaults to [min, max] of the elements ([0, 0] when empty).
  static IntegerSet from_elements(std::vector<std::uint64_t> elements);

  std::span<const std::uint64_t> elements() const { return elements_; }
  const std::vector<std::uint64_t>& vec() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  std::uint64_t lo() const { return lo_; }
  std::uint64_t hi() const { return hi_; }

  bool contains(std::uint64_t x) const;

  /// Elements inside [lo, hi] with the window narrowed to match.
  IntegerSet restrict(std::uint64_t lo, std::uint64_t hi) const;

  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  friend bool operator==(const IntegerSet&, const IntegerSet&) = default;

  /// Text form: a "# window lo hi" header, then one decimal integer per line.
  void write_text(std::ostream& os) const;
  static IntegerSet read_text(std::istream& is);

 private:
  std::vector<std::uint64_t> elements_;
  std::uint64_t lo_ = 0;
  std::uint64_t hi_ = 0;
};

}  // namespace friable
