#include "friable/tuples.hpp"

#include <algorithm>

#include "friable/arith.hpp"
#include "friable/error.hpp"

namespace friable {

OffsetTuple::OffsetTuple(std::vector<std::int64_t> offsets)
    : offsets_(std::move(offsets)) {
  require(!offsets_.empty(), "OffsetTuple: must be nonempty");
  std::sort(offsets_.begin(), offsets_.end());
  offsets_.erase(std::unique(offsets_.begin(), offsets_.end()), offsets_.end());
}

bool OffsetTuple::contains(std::int64_t u) const {
  return std::binary_search(offsets_.begin(), offsets_.end(), u);
}

bool is_admissible(const OffsetTuple& t) {
  require(t.size() >= 1, "is_admissible: empty tuple");
  for (std::uint32_t p : small_primes(static_cast<std::uint32_t>(t.size()))) {
    std::vector<bool> seen(p, false);
    std::size_t hit = 0;
    for (auto u : t.offsets()) {
      const auto r = static_cast<std::size_t>(((u % static_cast<std::int64_t>(p)) + p) % p);
      if (!seen[r]) {
        seen[r] = true;
        ++hit;
      }
    }
    if (hit == p) return false;
  }
  return true;
}

bool covers(const std::vector<std::uint64_t>& b, const OffsetTuple& t) {
  return std::all_of(b.begin(), b.end(), [&](std::uint64_t s) {
    return std::any_of(b.begin(), b.end(), [&](std::uint64_t beta) {
      return t.contains(static_cast<std::int64_t>(beta) -
                        static_cast<std::int64_t>(s));
    });
  });
}

std::string to_string(TripleCase c) {
  return "t" + std::to_string(static_cast<int>(c));
}

TripleSelection select_triple(std::uint64_t b2, std::uint64_t b3) {
  require(0 < b2 && b2 < b3, "select_triple: need 0 < b2 < b3");
  require(b3 < (std::uint64_t{1} << 62), "select_triple: b3 too large");
  const auto x = static_cast<std::int64_t>(b2);
  const auto y = static_cast<std::int64_t>(b3);
  const bool same_parity = (b2 % 2) == (b3 % 2);
  const bool congruent_mod3 = (b2 % 3) == (b3 % 3);

  TripleSelection sel;
  if (same_parity) {
    sel = b3 % 3 == 0 ? TripleSelection{OffsetTuple({-y, -x, y}), TripleCase::T1}
                      : TripleSelection{OffsetTuple({-y, -x, x}), TripleCase::T2};
  } else if (b2 % 2 == 1) {
    sel = congruent_mod3
              ? TripleSelection{OffsetTuple({x - y, y - x, x}), TripleCase::T3}
              : TripleSelection{OffsetTuple({x - y, -x, x}), TripleCase::T4};
  } else {
    sel = congruent_mod3
              ? TripleSelection{OffsetTuple({x - y, y - x, y}), TripleCase::T5}
              : TripleSelection{OffsetTuple({-y, y - x, y}), TripleCase::T6};
  }
  ensure(is_admissible(sel.tuple),
         "select_triple: " + to_string(sel.which) + " not admissible for (" +
             std::to_string(b2) + ", " + std::to_string(b3) + ")");
  ensure(covers({0, b2, b3}, sel.tuple),
         "select_triple: " + to_string(sel.which) + " does not cover {0, " +
             std::to_string(b2) + ", " + std::to_string(b3) + "}");
  return sel;
}

namespace {

bool sieve_prime(const PrimeSieve& sieve, std::int64_t v) {
  return v >= 2 && sieve.is_prime(static_cast<std::uint64_t>(v));
}

}  // namespace

std::vector<std::uint64_t> find_constellation(const OffsetTuple& t,
                                              std::uint64_t lo,
                                              std::uint64_t hi,
                                              const ConstellationFilter& filter,
                                              const PrimeSieve& sieve) {
  require(is_admissible(t), "find_constellation: tuple is not admissible");
  std::vector<std::uint64_t> out;
  if (lo > hi) return out;
  const std::int64_t reach = static_cast<std::int64_t>(hi) + std::max<std::int64_t>(t.max(), 0);
  require(reach >= 0 && static_cast<std::uint64_t>(reach) <= sieve.limit(),
          "find_constellation: sieve does not reach hi + max(t)");
  for (std::uint64_t n = lo; n <= hi; ++n) {
    const auto sn = static_cast<std::int64_t>(n);
    bool ok = std::all_of(t.offsets().begin(), t.offsets().end(),
                          [&](std::int64_t u) { return sieve_prime(sieve, sn + u); });
    if (!ok) continue;
    if (filter.composite_center && (n < 4 || sieve.is_prime(n))) continue;
    if (filter.consecutive) {
      for (std::int64_t v = sn + t.min() + 1; v < sn + t.max(); ++v) {
        if (!t.contains(v - sn) && sieve_prime(sieve, v)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
    }
    out.push_back(n);
  }
  return out;
}

std::vector<std::uint64_t> find_constellation(const OffsetTuple& t,
                                              std::uint64_t lo,
                                              std::uint64_t hi,
                                              const ConstellationFilter& filter) {
  const std::uint64_t reach =
      hi + static_cast<std::uint64_t>(std::max<std::int64_t>(t.max(), 0));
  const PrimeSieve sieve(std::max<std::uint64_t>(reach, 2));
  return find_constellation(t, lo, hi, filter, sieve);
}

namespace {

struct PlannedTuple {
  OffsetTuple tuple;
  std::optional<TripleCase> which;
};

PlannedTuple plan_tuple(const std::vector<std::uint64_t>& b) {
  require((b.size() == 2 || b.size() == 3) && b[0] == 0,
          "additive_witness: b must be {0, b2} or {0, b2, b3}");
  require(std::is_sorted(b.begin(), b.end()) &&
              std::adjacent_find(b.begin(), b.end()) == b.end(),
          "additive_witness: b must be strictly increasing");
  if (b.size() == 2) {
    const auto x = static_cast<std::int64_t>(b[1]);
    return {OffsetTuple({-x, x}), std::nullopt};
  }
  auto sel = select_triple(b[1], b[2]);
  return {sel.tuple, sel.which};
}

}  // namespace

std::optional<AdditiveWitness> additive_witness(
    const std::vector<std::uint64_t>& b, std::uint64_t n0,
    std::uint64_t search_hi, const PrimeSieve& sieve) {
  require(n0 >= 9, "additive_witness: n0 must be >= 9");
  const PlannedTuple plan = plan_tuple(b);
  const std::uint64_t start = n0 + b.back();
  if (start > search_hi) return std::nullopt;

  // Scan in blocks so an early witness does not pay for the whole range.
  constexpr std::uint64_t kBlock = 1 << 16;
  for (std::uint64_t lo = start; lo <= search_hi; lo += kBlock) {
    const std::uint64_t hi = std::min(search_hi, lo + kBlock - 1);
    const auto hits = find_constellation(plan.tuple, lo, hi,
                                         {.composite_center = true}, sieve);
    if (hits.empty()) continue;
    AdditiveWitness w{b, plan.tuple, plan.which, n0, hits.front(), {}};
    for (auto u : plan.tuple.offsets()) {
      w.primes.push_back(static_cast<std::uint64_t>(static_cast<std::int64_t>(w.n) + u));
    }
    ensure(validate(w), "additive_witness: witness failed re-validation");
    return w;
  }
  return std::nullopt;
}

std::optional<AdditiveWitness> additive_witness(
    const std::vector<std::uint64_t>& b, std::uint64_t n0,
    std::uint64_t search_hi) {
  require(!b.empty(), "additive_witness: empty b");
  const PrimeSieve sieve(std::max<std::uint64_t>(search_hi + b.back(), 2));
  return additive_witness(b, n0, search_hi, sieve);
}

bool validate(const AdditiveWitness& w) {
  if (w.b.size() < 2 || w.b.front() != 0) return false;
  if (w.n < w.n0 + w.b.back()) return false;
  if (w.n < 4 || is_prime(w.n)) return false;
  if (w.primes.size() != w.tuple.size()) return false;
  for (std::size_t i = 0; i < w.tuple.size(); ++i) {
    const std::int64_t v = static_cast<std::int64_t>(w.n) + w.tuple.offsets()[i];
    if (v < 0 || static_cast<std::uint64_t>(v) != w.primes[i]) return false;
    if (!is_prime(w.primes[i]) || w.primes[i] < w.n0) return false;
  }
  // Direct B × B search, deliberately not reusing covers().
  for (auto s : w.b) {
    bool found = false;
    for (auto beta : w.b) {
      const std::int64_t v = static_cast<std::int64_t>(w.n) -
                             static_cast<std::int64_t>(s) +
                             static_cast<std::int64_t>(beta);
      if (v != static_cast<std::int64_t>(w.n) && v >= 2 &&
          is_prime(static_cast<std::uint64_t>(v)) &&
          static_cast<std::uint64_t>(v) >= w.n0) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace friable
