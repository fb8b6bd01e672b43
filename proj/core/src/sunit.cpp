#include "friable/sunit.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "friable/error.hpp"

namespace friable {

Rational::Rational(std::int64_t n, std::int64_t d) {
  require(d != 0, "rational: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::int64_t g = std::gcd(n, d);
  num = n / g;
  den = d / g;
}

Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    const std::string head = text.substr(0, slash);
    const std::int64_t n = std::stoll(head, &used);
    if (used == head.size()) {
      if (slash == std::string::npos) return Rational(n);
      const std::string tail = text.substr(slash + 1);
      const std::int64_t d = std::stoll(tail, &used);
      if (used == tail.size() && d != 0) return Rational(n, d);
    }
  } catch (const std::logic_error&) {
  }
  throw ContractViolation("coefficient '" + text + "' is not a rational p or p/q");
}

std::string Rational::to_string() const {
  return den == 1 ? std::to_string(num)
                  : std::to_string(num) + "/" + std::to_string(den);
}

SUnitEquation::SUnitEquation(std::vector<Rational> c, GammaSemigroup g)
    : coeffs(std::move(c)), gamma(std::move(g)) {
  require(coeffs.size() >= 2, "sunit: need at least two coefficients");
  require(coeffs.size() <= 16, "sunit: at most 16 coefficients");
  for (const auto& a : coeffs) require(a.num != 0, "sunit: zero coefficient");
}

std::vector<std::int64_t> SUnitEquation::integer_coeffs() const {
  std::int64_t l = 1;
  for (const auto& a : coeffs) {
    l = std::lcm(l, a.den);
    require(l < (std::int64_t{1} << 40), "sunit: denominators too large");
  }
  std::vector<std::int64_t> out;
  std::int64_t g = 0;
  for (const auto& a : coeffs) {
    const __int128 v = static_cast<__int128>(a.num) * (l / a.den);
    require(v > -(static_cast<__int128>(1) << 40) && v < (static_cast<__int128>(1) << 40),
            "sunit: coefficient too large");
    out.push_back(static_cast<std::int64_t>(v));
    g = std::gcd(g, out.back());
  }
  for (auto& v : out) v /= g;
  return out;
}

bool has_vanishing_subsum(const std::vector<__int128>& terms) {
  const std::size_t m = terms.size();
  const std::uint64_t full = (std::uint64_t{1} << m) - 1;
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    __int128 s = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask >> i & 1U) s += terms[i];
    }
    if (s == 0) return true;
  }
  return false;
}

namespace {

std::uint64_t gcd_all(const std::vector<std::uint64_t>& xs) {
  std::uint64_t g = 0;
  for (auto x : xs) g = std::gcd(g, x);
  return g;
}

std::vector<__int128> terms_of(const std::vector<std::int64_t>& a,
                               const std::vector<std::uint64_t>& x) {
  std::vector<__int128> t;
  for (std::size_t i = 0; i < a.size(); ++i) {
    t.push_back(static_cast<__int128>(a[i]) * static_cast<__int128>(x[i]));
  }
  return t;
}

}  // namespace

std::vector<SolutionClass> solve_sunit(const SUnitEquation& eq,
                                       std::uint64_t height) {
  require(height >= 1, "solve_sunit: height must be >= 1");
  require(height < (std::uint64_t{1} << 40), "solve_sunit: height must be < 2^40");
  const auto a = eq.integer_coeffs();
  const std::size_t m = a.size();
  const auto elems = semigroup_elements(eq.gamma, height);
  std::vector<std::uint64_t> values;
  for (const auto& e : elems) values.push_back(e.value);

  std::set<SolutionClass> classes;
  std::vector<std::uint64_t> x(m);
  // Choose x_1..x_{m-1}; the equation then pins x_m.
  auto rec = [&](auto&& self, std::size_t i, __int128 partial) -> void {
    if (i + 1 == m) {
      const __int128 rhs = -partial;
      if (rhs % a[m - 1] != 0) return;
      const __int128 last = rhs / a[m - 1];
      if (last < 1 || last > static_cast<__int128>(height)) return;
      const auto xm = static_cast<std::uint64_t>(last);
      if (!std::binary_search(values.begin(), values.end(), xm)) return;
      x[m - 1] = xm;
      const std::uint64_t lambda = strip_gamma_part(gcd_all(x), eq.gamma).gamma_part;
      SolutionClass cls;
      for (auto v : x) cls.representative.push_back(v / lambda);
      cls.degenerate = has_vanishing_subsum(terms_of(a, cls.representative));
      classes.insert(std::move(cls));
      return;
    }
    for (auto v : values) {
      x[i] = v;
      self(self, i + 1, partial + static_cast<__int128>(a[i]) * v);
    }
  };
  rec(rec, 0, 0);
  return {classes.begin(), classes.end()};
}

namespace {

struct Block {
  std::vector<std::uint64_t> coords;
  std::uint64_t sum;
};

// Non-increasing multisets of pairwise coprime elements, sizes 1..k.
std::vector<std::vector<Block>> coprime_blocks(
    const std::vector<SemigroupElement>& elems, unsigned k) {
  std::vector<std::vector<Block>> by_size(k + 1);
  std::vector<std::uint64_t> cur;
  auto rec = [&](auto&& self, std::size_t start, std::uint64_t used,
                 std::uint64_t sum) -> void {
    if (!cur.empty()) by_size[cur.size()].push_back({cur, sum});
    if (cur.size() == k) return;
    for (std::size_t i = start; i < elems.size(); ++i) {
      const auto& e = elems[i];
      if (e.mask & used) continue;
      cur.push_back(e.value);
      self(self, e.value == 1 ? i : i + 1, used | e.mask, sum + e.value);
      cur.pop_back();
    }
  };
  rec(rec, 0, 0, 0);
  return by_size;
}

}  // namespace

LSetReport corollary_l_set(const GammaSemigroup& g, unsigned k,
                           std::uint64_t height, std::uint64_t eps_height) {
  require(k >= 2, "l-set: k must be >= 2");
  require(height >= 1 && eps_height >= 1, "l-set: heights must be >= 1");
  require(k <= 8, "l-set: k must be <= 8");
  require(height < (std::uint64_t{1} << 32) && eps_height < (std::uint64_t{1} << 24),
          "l-set: heights too large");
  auto elems = semigroup_elements(g, height);
  std::reverse(elems.begin(), elems.end());
  const auto blocks = coprime_blocks(elems, k);
  const auto eps = semigroup_elements(g, eps_height);

  std::vector<std::map<std::uint64_t, std::vector<const Block*>>> by_sum(k + 1);
  for (unsigned h = 1; h <= k; ++h) {
    for (const auto& blk : blocks[h]) by_sum[h][blk.sum].push_back(&blk);
  }

  std::set<std::uint64_t> coords;
  LSetReport report;
  std::vector<__int128> terms;
  for (unsigned l = 1; l <= k; ++l) {
    for (unsigned h = 1; h <= k; ++h) {
      if (l + h < 3) continue;
      for (const auto& x : blocks[l]) {
        for (const auto& e : eps) {
          const unsigned __int128 lhs = static_cast<unsigned __int128>(e.value) * x.sum;
          for (const auto& f : eps) {
            if (lhs % f.value != 0) continue;
            const unsigned __int128 ysum = lhs / f.value;
            if (ysum > static_cast<unsigned __int128>(height) * h) continue;
            const auto it = by_sum[h].find(static_cast<std::uint64_t>(ysum));
            if (it == by_sum[h].end()) continue;
            for (const Block* y : it->second) {
              terms.clear();
              for (auto v : x.coords) terms.push_back(static_cast<__int128>(e.value) * v);
              for (auto v : y->coords) terms.push_back(-static_cast<__int128>(f.value) * v);
              if (has_vanishing_subsum(terms)) continue;
              ++report.solutions;
              coords.insert(x.coords.begin(), x.coords.end());
              coords.insert(y->coords.begin(), y->coords.end());
            }
          }
        }
      }
    }
  }
  report.coordinates = IntegerSet({coords.begin(), coords.end()}, 1, height);
  return report;
}

TwoTermReport solve_two_term(std::uint64_t t2, std::uint64_t t1,
                             std::uint64_t n, std::int64_t c,
                             unsigned alpha_cap) {
  require(t1 >= 1 && t2 >= 1, "two-term: t1, t2 must be positive");
  require(n >= 2, "two-term: n must be >= 2");
  using i128 = __int128;
  const i128 bound = static_cast<i128>(1) << 120;
  std::vector<i128> pow{1};
  for (unsigned a = 1; a <= alpha_cap; ++a) {
    require(pow.back() <= bound / static_cast<i128>(n) / static_cast<i128>(std::max(t1, t2)),
            "two-term: n^alpha_cap too large for exact 128-bit evaluation");
    pow.push_back(pow.back() * static_cast<i128>(n));
  }
  TwoTermReport r;
  for (unsigned a1 = 0; a1 <= alpha_cap; ++a1) {
    for (unsigned a2 = 0; a2 <= alpha_cap; ++a2) {
      if (static_cast<i128>(t2) * pow[a1] - static_cast<i128>(t1) * pow[a2] == c) {
        r.solutions.emplace_back(a1, a2);
      }
    }
  }
  if (c != 0) {
    unsigned e = 0;
    std::uint64_t rest = c < 0 ? static_cast<std::uint64_t>(-(c + 1)) + 1
                               : static_cast<std::uint64_t>(c);
    while (rest % n == 0) {
      rest /= n;
      ++e;
    }
    r.min_exponent_bound = e;
  }
  return r;
}

}  // namespace friable
