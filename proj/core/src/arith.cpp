#include "friable/arith.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "friable/error.hpp"
#include "friable/sieve.hpp"

namespace friable {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

namespace {

constexpr std::array<std::uint64_t, 12> kWitnessBases{2,  3,  5,  7,  11, 13,
                                                      17, 19, 23, 29, 31, 37};

bool strong_probable_prime(std::uint64_t n, std::uint64_t a) {
  std::uint64_t d = n - 1;
  unsigned r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  std::uint64_t x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < r; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

const std::vector<std::uint32_t>& trial_primes() {
  static const std::vector<std::uint32_t> primes = small_primes(1 << 12);
  return primes;
}

// Brent's cycle-finding variant of Pollard rho. n is odd, composite, and
// has no factor below the trial-division cutoff.
std::uint64_t rho_split(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mul_mod(x, x, n) + c) % n; };
    std::uint64_t y = 2, x = 2, q = 1, g = 1, ys = 2;
    constexpr std::uint64_t kBatch = 128;
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        const std::uint64_t lim = std::min(kBatch, r - k);
        for (std::uint64_t i = 0; i < lim; ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      // Batch overshot; replay one step at a time.
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_into(std::uint64_t n, std::vector<std::uint64_t>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  const std::uint64_t d = rho_split(n);
  split_into(d, primes);
  split_into(n / d, primes);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : kWitnessBases) {
    if (n % p == 0) return n == p;
  }
  if (n < 41 * 41) return true;
  for (std::uint64_t a : kWitnessBases) {
    if (!strong_probable_prime(n, a)) return false;
  }
  return true;
}

std::vector<PrimePower> factorize(std::uint64_t n) {
  require(n >= 1, "factorize: n must be >= 1");
  require(n <= kValueCap, "factorize: n must be <= 2^63");
  std::vector<PrimePower> out;
  for (std::uint64_t p : trial_primes()) {
    if (p * p > n) break;
    if (n % p) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n == 1) return out;
  std::vector<std::uint64_t> rest;
  split_into(n, rest);
  std::sort(rest.begin(), rest.end());
  for (std::size_t i = 0; i < rest.size();) {
    std::size_t j = i;
    while (j < rest.size() && rest[j] == rest[i]) ++j;
    out.push_back({rest[i], static_cast<unsigned>(j - i)});
    i = j;
  }
  return out;
}

std::uint64_t greatest_prime_factor(std::uint64_t n) {
  const auto f = factorize(n);
  return f.empty() ? 1 : f.back().prime;
}

// ---------------------------------------------------------------------------
// Smoothness policies

YPolicy YPolicy::log_factor(double factor) {
  require(factor > 0.0 && std::isfinite(factor),
          "log policy: factor must be positive");
  return YPolicy(Kind::LogFactor, 0, factor);
}

YPolicy YPolicy::parse(const std::string& text) {
  if (text == "composites") return composites();
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const std::string head = text.substr(0, colon);
    const std::string arg = text.substr(colon + 1);
    try {
      std::size_t used = 0;
      if (head == "fixed") {
        const auto v = std::stoull(arg, &used);
        if (used == arg.size()) return fixed_bound(v);
      } else if (head == "log") {
        const double v = std::stod(arg, &used);
        if (used == arg.size()) return log_factor(v);
      }
    } catch (const std::logic_error&) {
    }
  }
  throw ContractViolation("unknown smoothness policy '" + text +
                          "' (expected composites, fixed:<y0> or log:<c>)");
}

double YPolicy::threshold(std::uint64_t n) const {
  switch (kind_) {
    case Kind::FixedBound:
      return static_cast<double>(bound_);
    case Kind::LogFactor:
      return std::max(factor_ * std::log(static_cast<double>(n)), 2.0);
    case Kind::Composites:
      break;
  }
  return 0.0;
}

bool YPolicy::is_smooth(std::uint64_t n) const {
  require(n >= 1, "is_smooth: n must be >= 1");
  if (kind_ == Kind::Composites) return n >= 4 && !is_prime(n);
  return static_cast<double>(greatest_prime_factor(n)) <= threshold(n);
}

std::string YPolicy::to_string() const {
  switch (kind_) {
    case Kind::Composites:
      return "composites";
    case Kind::FixedBound:
      return "fixed:" + std::to_string(bound_);
    case Kind::LogFactor: {
      std::string s = std::to_string(factor_);
      s.erase(s.find_last_not_of('0') + 1);
      if (s.back() == '.') s.pop_back();
      return "log:" + s;
    }
  }
  return {};
}

IntegerSet smooth_set(const YPolicy& policy, std::uint64_t limit) {
  require(limit >= 1, "smooth_set: limit must be >= 1");
  std::vector<std::uint64_t> out;
  if (policy.kind() == YPolicy::Kind::Composites) {
    const PrimeSieve sieve(limit);
    for (std::uint64_t n = 4; n <= limit; ++n) {
      if (!sieve.is_prime(n)) out.push_back(n);
    }
    return IntegerSet(std::move(out), 1, limit);
  }

  // Divide out every prime up to the largest threshold on [1, limit]; the last
  // prime divided out is p+ of the smooth part.
  const double ymax = policy.threshold(limit);
  const auto pmax = static_cast<std::uint64_t>(
      std::min(static_cast<double>(limit), std::floor(ymax)));
  const PrimeSieve sieve(std::max<std::uint64_t>(pmax, 2));
  const auto primes = sieve.primes(2, pmax);

  constexpr std::uint64_t kBlock = std::uint64_t{1} << 16;
  std::vector<std::uint64_t> rem(kBlock), gpf(kBlock);
  for (std::uint64_t lo = 1; lo <= limit; lo += kBlock) {
    const std::uint64_t hi = std::min(limit, lo + kBlock - 1);
    const std::uint64_t len = hi - lo + 1;
    for (std::uint64_t i = 0; i < len; ++i) {
      rem[i] = lo + i;
      gpf[i] = 1;
    }
    for (std::uint64_t p : primes) {
      for (std::uint64_t m = (lo + p - 1) / p * p; m <= hi; m += p) {
        auto& r = rem[m - lo];
        do r /= p; while (r % p == 0);
        gpf[m - lo] = p;
      }
    }
    for (std::uint64_t i = 0; i < len; ++i) {
      const std::uint64_t n = lo + i;
      if (rem[i] == 1 &&
          static_cast<double>(gpf[i]) <= policy.threshold(n)) {
        out.push_back(n);
      }
    }
  }
  return IntegerSet(std::move(out), 1, limit);
}

IntegerSet shifted_smooth_set(const YPolicy& policy, std::uint64_t limit) {
  require(limit >= 2, "shifted_smooth_set: limit must be >= 2");
  const IntegerSet base = smooth_set(policy, limit - 1);
  std::vector<std::uint64_t> out;
  out.reserve(base.size());
  for (auto m : base) out.push_back(m + 1);
  return IntegerSet(std::move(out), 1, limit);
}

}  // namespace friable
