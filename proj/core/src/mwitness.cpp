#include "friable/mwitness.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "friable/arith.hpp"
#include "friable/error.hpp"

namespace friable {

namespace {

// Inverse of a modulo m for gcd(a, m) = 1, via the extended Euclidean
// algorithm on signed 128-bit values.
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  __int128 old_r = a % m, r = m, old_s = 1, s = 0;
  while (r != 0) {
    const __int128 q = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - q * r};
    std::tie(old_s, s) = std::pair{s, old_s - q * s};
  }
  __int128 inv = old_s % static_cast<__int128>(m);
  if (inv < 0) inv += m;
  return static_cast<std::uint64_t>(inv);
}

bool is_power_of_two(std::uint64_t v) { return v && !(v & (v - 1)); }

std::uint64_t smallest_odd_prime_divisor(std::uint64_t v) {
  while (v % 2 == 0) v /= 2;
  for (const auto& f : factorize(v)) return f.prime;
  return 0;
}

std::string join(const std::vector<std::uint64_t>& v) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << '}';
  return os.str();
}

std::string u128_to_string(unsigned __int128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return {s.rbegin(), s.rend()};
}

}  // namespace

CrtSolution crt_solve(const std::vector<Congruence>& system) {
  require(!system.empty(), "crt_solve: empty system");
  for (std::size_t i = 0; i < system.size(); ++i) {
    const auto& c = system[i];
    require(c.modulus >= 2, "crt_solve: modulus must be >= 2");
    require(c.residue < c.modulus, "crt_solve: residue must be < modulus");
    for (std::size_t j = 0; j < i; ++j) {
      if (std::gcd(c.modulus, system[j].modulus) != 1) {
        throw ContractViolation(
            "crt_solve: moduli " + std::to_string(system[j].modulus) + " and " +
            std::to_string(c.modulus) + " are not coprime");
      }
    }
  }
  // Incremental Garner-style combination: x ≡ x_acc (mod m_acc).
  std::uint64_t x = system[0].residue;
  std::uint64_t m = system[0].modulus;
  for (std::size_t i = 1; i < system.size(); ++i) {
    const auto [r, mi] = system[i];
    const std::uint64_t next_m = checked_mul(m, mi);
    // x + m k ≡ r (mod mi)  =>  k ≡ (r - x) m^{-1} (mod mi)
    const std::uint64_t diff = (r + mi - x % mi) % mi;
    const std::uint64_t k = mul_mod(diff, inverse_mod(m % mi, mi), mi);
    x = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(m) * k + x) % next_m);
    m = next_m;
  }
  return {x == 0 ? m : x, m};
}

unsigned __int128 CrtWitnessPlan::shifted_value(std::uint64_t t) const {
  const unsigned __int128 n = static_cast<unsigned __int128>(t) * n_cap + x0;
  return static_cast<unsigned __int128>(b[1]) * (n + 1) - 1;
}

unsigned __int128 CrtWitnessPlan::progression_value(std::uint64_t t) const {
  return static_cast<unsigned __int128>(prog_step) * t + prog_offset;
}

CrtWitnessPlan build_plan(const std::vector<std::uint64_t>& b) {
  require(b.size() >= 2, "build_plan: |b| must be >= 2");
  require(b[0] == 1, "build_plan: b must contain 1 as its smallest element");
  require(std::adjacent_find(b.begin(), b.end(),
                             std::greater_equal<>()) == b.end(),
          "build_plan: b must be strictly increasing");

  CrtWitnessPlan plan;
  plan.b = b;
  for (std::size_t i = 1; i < b.size(); ++i) {
    plan.p_set.push_back(is_power_of_two(b[i]) ? 4 : smallest_odd_prime_divisor(b[i]));
  }
  std::sort(plan.p_set.begin(), plan.p_set.end());
  plan.p_set.erase(std::unique(plan.p_set.begin(), plan.p_set.end()),
                   plan.p_set.end());

  const std::uint64_t b2 = b[1];
  const bool has_four =
      std::find(plan.p_set.begin(), plan.p_set.end(), 4) != plan.p_set.end();
  std::vector<std::uint64_t> qs;
  for (std::uint64_t q = 2; qs.size() < 2; ++q) {
    if (!is_prime(q)) continue;
    if (std::find(plan.p_set.begin(), plan.p_set.end(), q) != plan.p_set.end()) continue;
    if (q == 2 && has_four) continue;
    if ((b2 - 1) % q == 0) continue;
    qs.push_back(q);
  }
  plan.q1 = qs[0];
  plan.q2 = qs[1];

  plan.system.push_back({0, plan.q1});
  plan.system.push_back({0, plan.q2});
  for (auto p : plan.p_set) {
    const bool shares = std::gcd(p, b2 - 1) > 1;
    plan.system.push_back({shares ? 1 % p : 0, p});
  }
  const auto sol = crt_solve(plan.system);
  plan.x0 = sol.x0;
  plan.n_cap = sol.modulus;
  plan.prog_step = checked_mul(b2, plan.n_cap);
  plan.prog_offset = checked_mul(b2, checked_add(plan.x0, 1)) - 1;

  if (auto err = check_plan(plan)) throw AssertionFailure("build_plan: " + *err);
  return plan;
}

std::optional<std::string> check_plan(const CrtWitnessPlan& plan) {
  if (plan.b.size() < 2 || plan.b[0] != 1) return "b must start with 1";
  const std::uint64_t b2 = plan.b[1];
  if (std::gcd(plan.prog_step, plan.prog_offset) != 1) {
    return "gcd(prog_step, prog_offset) = " +
           std::to_string(std::gcd(plan.prog_step, plan.prog_offset)) + " != 1";
  }
  for (auto q : {plan.q1, plan.q2}) {
    if (plan.x0 % q != 0 || plan.n_cap % q != 0) {
      return "q = " + std::to_string(q) + " must divide x0 and N";
    }
  }
  if (plan.q1 == plan.q2) return "q1 = q2";
  std::uint64_t product = plan.q1 * plan.q2;
  for (auto p : plan.p_set) {
    const std::uint64_t want = std::gcd(p, b2 - 1) > 1 ? 1 % p : 0;
    if (plan.x0 % p != want) {
      return "x0 mod " + std::to_string(p) + " should be " + std::to_string(want);
    }
    product *= p;
  }
  if (product != plan.n_cap) return "N != q1 q2 prod(P)";
  if (plan.prog_step != b2 * plan.n_cap) return "prog_step != b2 N";
  if (plan.prog_offset != b2 * (plan.x0 + 1) - 1) return "prog_offset != b2(x0+1)-1";
  // Every b_i (i >= 2) owns a member of P: 4 for powers of two, else an odd
  // prime divisor.
  for (std::size_t i = 1; i < plan.b.size(); ++i) {
    const std::uint64_t bi = plan.b[i];
    const bool has = std::any_of(plan.p_set.begin(), plan.p_set.end(), [&](std::uint64_t p) {
      return p == 4 ? is_power_of_two(bi) : (p % 2 == 1 && bi % p == 0);
    });
    if (!has) return "b_" + std::to_string(i + 1) + " has no member of P";
  }
  return std::nullopt;
}

bool MultiplicativeChecks::all() const {
  return n_composite && n_above_n0 && shifted_prime.value_or(true) &&
         std::all_of(non_divisible.begin(), non_divisible.end(),
                     [](bool v) { return v; });
}

MultiplicativeChecks recheck(const MultiplicativeWitness& w) {
  MultiplicativeChecks c;
  c.n_composite = w.n >= 4 && !is_prime(w.n);
  c.n_above_n0 = w.branch == WitnessBranch::Unit ? w.n > w.n0 : w.n >= w.n0;
  const std::size_t first = w.branch == WitnessBranch::Unit ? 1 : 0;
  if (w.branch == WitnessBranch::Unit) {
    const unsigned __int128 v = static_cast<unsigned __int128>(w.b[1]) * (w.n + 1) - 1;
    c.shifted_prime = v < kValueCap && is_prime(static_cast<std::uint64_t>(v));
  }
  for (std::size_t i = first; i < w.b.size(); ++i) {
    c.non_divisible.push_back((w.n + 1) % w.b[i] != 0);
  }
  return c;
}

std::optional<MultiplicativeWitness> multiplicative_witness(
    const std::vector<std::uint64_t>& b, std::uint64_t n0, std::uint64_t t_hi) {
  require(b.size() >= 2, "multiplicative_witness: |b| must be >= 2");
  require(b.front() >= 1, "multiplicative_witness: elements must be >= 1");
  require(std::adjacent_find(b.begin(), b.end(), std::greater_equal<>()) == b.end(),
          "multiplicative_witness: b must be strictly increasing");
  require(n0 >= 2, "multiplicative_witness: n0 must be >= 2");

  MultiplicativeWitness w;
  w.b = b;
  w.n0 = n0;
  auto& tr = w.transcript;

  if (b.front() > 1) {
    w.branch = WitnessBranch::NonUnit;
    std::uint64_t prod = 1;
    for (auto v : b) prod = checked_mul(prod, v);
    w.n = checked_mul((n0 + prod - 1) / prod, prod);
    tr.push_back("1 not in B = " + join(b) + "; product of B = " + std::to_string(prod));
    tr.push_back("n = smallest multiple of " + std::to_string(prod) + " with n >= " +
                 std::to_string(n0) + " = " + std::to_string(w.n));
    tr.push_back("every b_i divides n and b_i >= 2, so no b_i divides n + 1 = " +
                 std::to_string(w.n + 1));
  } else {
    w.branch = WitnessBranch::Unit;
    CrtWitnessPlan plan = build_plan(b);
    tr.push_back("1 in B = " + join(b) + "; P = " + join(plan.p_set) + ", q1 = " +
                 std::to_string(plan.q1) + ", q2 = " + std::to_string(plan.q2));
    {
      std::ostringstream os;
      os << "system:";
      for (const auto& c : plan.system) os << " x = " << c.residue << " (mod " << c.modulus << ");";
      os << " x0 = " << plan.x0 << ", N = " << plan.n_cap;
      tr.push_back(os.str());
    }
    tr.push_back("progression " + std::to_string(plan.prog_step) + " t + " +
                 std::to_string(plan.prog_offset) + ", gcd = 1");
    const std::uint64_t t0 = plan.x0 > n0 ? 0 : (n0 - plan.x0) / plan.n_cap + 1;
    std::optional<std::uint64_t> found;
    for (std::uint64_t t = t0; t <= t_hi; ++t) {
      const unsigned __int128 v = plan.progression_value(t);
      if (v >= kValueCap) throw OverflowError("progression value exceeds 2^63");
      if (is_prime(static_cast<std::uint64_t>(v))) {
        found = t;
        break;
      }
    }
    if (!found) return std::nullopt;
    w.t = *found;
    w.n = checked_add(checked_mul(w.t, plan.n_cap), plan.x0);
    ensure(plan.shifted_value(w.t) == plan.progression_value(w.t),
           "multiplicative_witness: b2(n+1)-1 differs from the progression value");
    tr.push_back("t = " + std::to_string(w.t) + ": " +
                 u128_to_string(plan.progression_value(w.t)) + " is prime; n = tN + x0 = " +
                 std::to_string(w.n));
    tr.push_back("q1 q2 = " + std::to_string(plan.q1 * plan.q2) +
                 " divides n, so n is composite");
    tr.push_back("b2(n+1) - 1 = " + u128_to_string(plan.shifted_value(w.t)) +
                 " is prime, so n + 1 = (n + 1) * 1 is not available");
    tr.push_back("n + 1 = 1 or 2 mod each p in P, so b_i does not divide n + 1 for i >= 2");
    w.plan = std::move(plan);
  }
  w.checks = recheck(w);
  ensure(w.checks.all(), "multiplicative_witness: witness failed re-validation");
  return w;
}

std::string to_string(WitnessBranch branch) {
  return branch == WitnessBranch::Unit ? "unit" : "nonunit";
}

}  // namespace friable
