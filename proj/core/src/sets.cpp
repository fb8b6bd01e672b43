#include "friable/sets.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <thread>

#include "friable/error.hpp"
#include "friable/sieve.hpp"

namespace friable {

IntegerSet sumset(const IntegerSet& b, const IntegerSet& c) {
  std::vector<std::uint64_t> out;
  out.reserve(b.size() * c.size());
  for (auto x : b) {
    for (auto y : c) out.push_back(checked_add(x, y));
  }
  return IntegerSet(std::move(out), checked_add(b.lo(), c.lo()),
                    checked_add(b.hi(), c.hi()));
}

IntegerSet productset(const IntegerSet& b, const IntegerSet& c) {
  require((b.empty() || b.vec().front() >= 1) &&
              (c.empty() || c.vec().front() >= 1),
          "productset: elements must be >= 1");
  std::vector<std::uint64_t> out;
  out.reserve(b.size() * c.size());
  for (auto x : b) {
    for (auto y : c) out.push_back(checked_mul(x, y));
  }
  const std::uint64_t lo =
      checked_mul(std::max<std::uint64_t>(b.lo(), 1), std::max<std::uint64_t>(c.lo(), 1));
  const std::uint64_t hi = std::max(lo, checked_mul(b.hi(), c.hi()));
  return IntegerSet(std::move(out), lo, hi);
}

WindowComparison windowed_equal(const IntegerSet& a, const IntegerSet& b,
                                std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi || lo < a.lo() || hi > a.hi() || lo < b.lo() || hi > b.hi()) {
    throw ContractViolation("windowed_equal: [" + std::to_string(lo) + ", " +
                            std::to_string(hi) +
                            "] is not inside both windows");
  }
  auto ia = std::lower_bound(a.begin(), a.end(), lo);
  auto ib = std::lower_bound(b.begin(), b.end(), lo);
  while (true) {
    const bool ea = ia == a.end() || *ia > hi;
    const bool eb = ib == b.end() || *ib > hi;
    if (ea && eb) return {};
    if (ea) return {false, *ib};
    if (eb) return {false, *ia};
    if (*ia != *ib) return {false, std::min(*ia, *ib)};
    ++ia;
    ++ib;
  }
}

std::string to_string(DecompositionKind kind) {
  return kind == DecompositionKind::Additive ? "additive" : "multiplicative";
}

std::string to_string(WindowMode mode) {
  return mode == WindowMode::Shrunk ? "shrunk" : "exact";
}

namespace {

// Fixed-size bitset over [0, n) with the shifted combinators the additive
// search needs.
class Bits {
 public:
  explicit Bits(std::uint64_t n) : n_(n), w_(n / 64 + 1, 0) {}
  std::uint64_t size() const { return n_; }
  void set(std::uint64_t i) { w_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::uint64_t i) const { return (w_[i / 64] >> (i % 64)) & 1U; }
  void fill() {
    std::fill(w_.begin(), w_.end(), ~std::uint64_t{0});
    trim();
  }
  // this &= (src >> s), i.e. bit i keeps src bit i + s.
  void and_shifted_down(const Bits& src, std::uint64_t s) {
    const std::uint64_t ws = s / 64, bs = s % 64;
    for (std::size_t i = 0; i < w_.size(); ++i) {
      const std::size_t j = i + ws;
      std::uint64_t v = j < src.w_.size() ? src.w_[j] >> bs : 0;
      if (bs && j + 1 < src.w_.size()) v |= src.w_[j + 1] << (64 - bs);
      w_[i] &= v;
    }
    trim();
  }
  // this |= (src << s), i.e. bit i + s gets src bit i.
  void or_shifted_up(const Bits& src, std::uint64_t s) {
    const std::uint64_t ws = s / 64, bs = s % 64;
    for (std::size_t i = w_.size(); i-- > ws;) {
      const std::size_t j = i - ws;
      std::uint64_t v = j < src.w_.size() ? src.w_[j] << bs : 0;
      if (bs && j >= 1 && j - 1 < src.w_.size()) v |= src.w_[j - 1] >> (64 - bs);
      w_[i] |= v;
    }
    trim();
  }
  std::uint64_t count() const {
    std::uint64_t c = 0;
    for (auto w : w_) c += static_cast<std::uint64_t>(std::popcount(w));
    return c;
  }
  std::vector<std::uint64_t> ones() const {
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < w_.size(); ++i) {
      std::uint64_t bits = w_[i];
      while (bits) {
        out.push_back(i * 64 + static_cast<unsigned>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
    return out;
  }

 private:
  void trim() {
    const unsigned tail = static_cast<unsigned>(n_ % 64);
    w_.back() &= tail ? (std::uint64_t{1} << tail) - 1 : 0;
  }
  std::uint64_t n_;
  std::vector<std::uint64_t> w_;
};

// Membership test for target elements; bitset when the window is modest.
class Membership {
 public:
  explicit Membership(const IntegerSet& s) : set_(s) {
    if (s.hi() < (std::uint64_t{1} << 28)) {
      bits_.emplace(s.hi() + 1);
      for (auto x : s) bits_->set(x);
    }
  }
  bool operator()(std::uint64_t x) const {
    if (x > set_.hi()) return false;
    return bits_ ? bits_->test(x) : set_.contains(x);
  }

 private:
  const IntegerSet& set_;
  std::optional<Bits> bits_;
};

using BList = std::vector<std::vector<std::uint64_t>>;

// Combinations drawn from pool (ascending), each prefixed by `fixed`, with
// total size in [min_size, max_size], in lexicographic order.
BList enumerate_b(const std::vector<std::uint64_t>& fixed,
                  const std::vector<std::uint64_t>& pool, std::size_t min_size,
                  std::size_t max_size) {
  BList out;
  std::vector<std::uint64_t> cur = fixed;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() >= min_size) out.push_back(cur);
    if (cur.size() == max_size) return;
    for (std::size_t i = start; i < pool.size(); ++i) {
      cur.push_back(pool[i]);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

bool any_target_in(const IntegerSet& t, std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) return false;
  auto it = std::lower_bound(t.begin(), t.end(), lo);
  return it != t.end() && *it <= hi;
}

struct AdditiveContext {
  const IntegerSet& target;
  bool exact;
  Bits allowed;  // x ∈ target (or x < lo when shrunk), over [0, hi]

  AdditiveContext(const IntegerSet& t, WindowMode mode)
      : target(t), exact(mode == WindowMode::Exact), allowed(t.hi() + 1) {
    if (!exact) {
      for (std::uint64_t x = 0; x < t.lo(); ++x) allowed.set(x);
    }
    for (auto x : t) allowed.set(x);
  }

  std::optional<DecompositionCandidate> evaluate(
      const std::vector<std::uint64_t>& b) const {
    const std::uint64_t lo = target.lo(), hi = target.hi();
    const std::uint64_t top = b.back();
    if (top > hi) return std::nullopt;
    if (!exact && top > hi - top) return std::nullopt;
    const std::uint64_t cov_lo = exact ? lo : lo + top;
    const std::uint64_t cov_hi = exact ? hi : hi - top;
    if (!any_target_in(target, cov_lo, cov_hi)) return std::nullopt;

    Bits c(hi - top + 1);
    c.fill();
    for (auto beta : b) c.and_shifted_down(allowed, beta);
    if (c.count() < 2) return std::nullopt;

    Bits covered(hi + 1);
    for (auto beta : b) covered.or_shifted_up(c, beta);
    auto it = std::lower_bound(target.begin(), target.end(), cov_lo);
    for (; it != target.end() && *it <= cov_hi; ++it) {
      if (!covered.test(*it)) return std::nullopt;
    }
    return DecompositionCandidate{DecompositionKind::Additive, b,
                                  IntegerSet(c.ones(), 0, hi - top), cov_lo,
                                  cov_hi};
  }
};

struct MultiplicativeContext {
  const IntegerSet& target;
  bool exact;
  Membership member;

  MultiplicativeContext(const IntegerSet& t, WindowMode mode)
      : target(t), exact(mode == WindowMode::Exact), member(t) {}

  bool valid(std::uint64_t c, const std::vector<std::uint64_t>& b) const {
    for (auto beta : b) {
      const std::uint64_t v = c * beta;
      if ((exact || v >= target.lo()) && !member(v)) return false;
    }
    return true;
  }

  std::optional<DecompositionCandidate> evaluate(
      const std::vector<std::uint64_t>& b) const {
    const std::uint64_t top = b.back();
    const std::uint64_t c_hi = target.hi() / top;
    if (c_hi < 1) return std::nullopt;
    const std::uint64_t cov_lo =
        exact ? target.lo() : std::max<std::uint64_t>(target.lo(), 1) * top;
    const std::uint64_t cov_hi = exact ? target.hi() : c_hi;
    if (!any_target_in(target, cov_lo, cov_hi)) return std::nullopt;

    auto it = std::lower_bound(target.begin(), target.end(), cov_lo);
    for (; it != target.end() && *it <= cov_hi; ++it) {
      const std::uint64_t x = *it;
      bool hit = false;
      for (auto beta : b) {
        if (x % beta == 0 && valid(x / beta, b)) {
          hit = true;
          break;
        }
      }
      if (!hit) return std::nullopt;
    }
    std::vector<std::uint64_t> c;
    for (std::uint64_t x = 1; x <= c_hi; ++x) {
      if (valid(x, b)) c.push_back(x);
    }
    if (c.size() < 2) return std::nullopt;
    return DecompositionCandidate{DecompositionKind::Multiplicative, b,
                                  IntegerSet(std::move(c), 1, c_hi), cov_lo,
                                  cov_hi};
  }
};

template <class Context>
std::vector<DecompositionCandidate> run_search(const Context& ctx,
                                               const BList& bs,
                                               unsigned threads) {
  std::vector<std::optional<DecompositionCandidate>> slots(bs.size());
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < bs.size(); i += stride) {
      slots[i] = ctx.evaluate(bs[i]);
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(bs.size(), 1)));
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
  }
  std::vector<DecompositionCandidate> out;
  for (auto& s : slots) {
    if (s) out.push_back(std::move(*s));
  }
  return out;
}

}  // namespace

std::vector<DecompositionCandidate> decompose_search(
    const IntegerSet& target, DecompositionKind kind,
    const SearchBounds& bounds) {
  require(!target.empty(), "decompose_search: target must be nonempty");
  require(bounds.max_b_size >= 2, "decompose_search: max_b_size must be >= 2");
  require(bounds.max_b_elem >= 1, "decompose_search: max_b_elem must be >= 1");

  if (kind == DecompositionKind::Additive) {
    std::vector<std::uint64_t> pool;
    for (std::uint64_t x = 1; x <= bounds.max_b_elem; ++x) pool.push_back(x);
    const BList bs = enumerate_b({0}, pool, 2, bounds.max_b_size);
    const AdditiveContext ctx(target, bounds.window);
    return run_search(ctx, bs, bounds.threads);
  }

  require(target.vec().front() >= 1,
          "decompose_search: multiplicative target must be positive");
  std::vector<std::uint64_t> pool;
  for (std::uint64_t d = 1; d <= bounds.max_b_elem; ++d) {
    if (std::any_of(target.begin(), target.end(),
                    [d](std::uint64_t x) { return x % d == 0; })) {
      pool.push_back(d);
    }
  }
  const BList bs = enumerate_b({}, pool, 2, bounds.max_b_size);
  const MultiplicativeContext ctx(target, bounds.window);
  return run_search(ctx, bs, bounds.threads);
}

bool recheck_candidate(const IntegerSet& target,
                       const DecompositionCandidate& candidate) {
  if (candidate.b.size() < 2 || candidate.c.size() < 2) return false;
  const IntegerSet b = IntegerSet::from_elements(candidate.b);
  const IntegerSet combined = candidate.kind == DecompositionKind::Additive
                                  ? sumset(b, candidate.c)
                                  : productset(b, candidate.c);
  const std::uint64_t lo = candidate.coverage_lo, hi = candidate.coverage_hi;
  if (lo > hi || lo < combined.lo() || hi > combined.hi() || lo < target.lo() ||
      hi > target.hi()) {
    return false;
  }
  return windowed_equal(target, combined, lo, hi).equal;
}

Theorem1Report verify_theorem1(std::uint64_t limit) {
  require(limit >= 20, "verify_theorem1: limit must be >= 20");
  const PrimeSieve sieve(limit + 5);
  std::vector<std::uint64_t> a;
  for (std::uint64_t n = 1; n <= limit; ++n) {
    if (!sieve.is_prime(n) && !sieve.is_prime(n + 1) && !sieve.is_prime(n + 3) &&
        !sieve.is_prime(n + 5)) {
      a.push_back(n);
    }
  }
  Theorem1Report report;
  report.limit = limit;
  report.a_count = a.size();
  const IntegerSet aset(std::move(a), 0, limit);
  const IntegerSet bset({0, 1, 3, 5}, 0, 5);
  const IntegerSet sums = sumset(aset, bset).restrict(9, limit);

  std::vector<std::uint64_t> composites;
  for (std::uint64_t n = 9; n <= limit; ++n) {
    if (!sieve.is_prime(n)) composites.push_back(n);
  }
  const IntegerSet comp(std::move(composites), 9, limit);
  report.sum_count = sums.size();
  report.composite_count = comp.size();
  const auto cmp = windowed_equal(sums, comp, 9, limit);
  report.pass = cmp.equal;
  report.first_mismatch = cmp.first_mismatch;
  return report;
}

}  // namespace friable
