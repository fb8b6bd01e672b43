#include "friable/semigroup.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "friable/error.hpp"

namespace friable {

GammaSemigroup::GammaSemigroup(std::vector<std::uint64_t> generators)
    : gens_(std::move(generators)) {
  require(!gens_.empty(), "gamma: at least one generator required");
  require(gens_.size() <= 62, "gamma: too many generators");
  std::sort(gens_.begin(), gens_.end());
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    require(gens_[i] >= 2, "gamma: generators must be > 1 (got " +
                               std::to_string(gens_[i]) + ")");
    for (std::size_t j = 0; j < i; ++j) {
      if (std::gcd(gens_[i], gens_[j]) != 1) {
        throw ContractViolation("gamma: generators " + std::to_string(gens_[j]) +
                                " and " + std::to_string(gens_[i]) +
                                " are not coprime");
      }
    }
  }
}

GammaSemigroup GammaSemigroup::parse(const std::string& csv) {
  std::vector<std::uint64_t> gens;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || item[0] == '-') {
      throw ContractViolation("gamma: '" + item + "' is not a positive integer");
    }
    gens.push_back(v);
  }
  return GammaSemigroup(std::move(gens));
}

bool GammaSemigroup::contains(std::uint64_t x) const {
  return x >= 1 && strip_gamma_part(x, *this).cofactor == 1;
}

std::string GammaSemigroup::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(gens_[i]);
  }
  return s;
}

std::vector<SemigroupElement> semigroup_elements(const GammaSemigroup& g,
                                                 std::uint64_t limit) {
  require(limit >= 1, "semigroup: limit must be >= 1");
  std::vector<SemigroupElement> out;
  const auto& gens = g.generators();
  auto rec = [&](auto&& self, std::size_t i, std::uint64_t value,
                 std::uint64_t mask) -> void {
    if (i == gens.size()) {
      out.push_back({value, mask});
      return;
    }
    self(self, i + 1, value, mask);
    std::uint64_t v = value;
    while (v <= limit / gens[i]) {
      v *= gens[i];
      self(self, i + 1, v, mask | (std::uint64_t{1} << i));
    }
  };
  rec(rec, 0, 1, 0);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.value < b.value; });
  return out;
}

IntegerSet enumerate_semigroup(const GammaSemigroup& g, std::uint64_t limit) {
  std::vector<std::uint64_t> values;
  for (const auto& e : semigroup_elements(g, limit)) values.push_back(e.value);
  return IntegerSet(std::move(values), 1, limit);
}

namespace {

// Depth-first over multisets drawn from elems (descending), recording sums of
// sizes in [min_terms, k]. With coprime set, masks must stay disjoint; 1 has
// an empty mask so it may repeat.
IntegerSet sum_family(const GammaSemigroup& g, unsigned k, bool cumulative,
                      std::uint64_t limit, bool coprime) {
  require(k >= 1, "h_family: k must be >= 1");
  require(limit >= 1, "h_family: limit must be >= 1");
  auto elems = semigroup_elements(g, limit);
  std::reverse(elems.begin(), elems.end());
  const unsigned min_terms = cumulative ? 1 : k;
  std::vector<std::uint64_t> sums;

  auto rec = [&](auto&& self, std::size_t start, unsigned depth,
                 std::uint64_t sum, std::uint64_t used) -> void {
    if (depth >= min_terms) sums.push_back(sum);
    if (depth == k) return;
    for (std::size_t i = start; i < elems.size(); ++i) {
      const auto& e = elems[i];
      // Slots still required below min_terms take at least 1 each.
      const std::uint64_t owed = depth + 1 < min_terms ? min_terms - depth - 1 : 0;
      if (e.value > limit - sum || owed > limit - sum - e.value) continue;
      if (coprime && (e.mask & used)) continue;
      // A value > 1 is never coprime to itself, so only 1 may repeat.
      const std::size_t next = (coprime && e.value != 1) ? i + 1 : i;
      self(self, next, depth + 1, sum + e.value, used | e.mask);
    }
  };
  rec(rec, 0, 0, 0, 0);
  return IntegerSet(std::move(sums), 1, limit);
}

}  // namespace

IntegerSet h_family(const GammaSemigroup& g, unsigned k, bool cumulative,
                    std::uint64_t limit) {
  return sum_family(g, k, cumulative, limit, true);
}

IntegerSet h_star_family(const GammaSemigroup& g, unsigned k, bool cumulative,
                         std::uint64_t limit) {
  return sum_family(g, k, cumulative, limit, false);
}

ExceptionReport verify_exception(std::uint64_t limit) {
  require(limit >= 8, "verify_exception: limit must be >= 8");
  require(limit < kValueCap / 2, "verify_exception: limit too large");
  ExceptionReport r;
  r.limit = limit;
  r.sums = h_family(GammaSemigroup({2}), 3, true, limit);
  std::vector<std::uint64_t> base;
  for (std::uint64_t p = 1; p <= limit; p *= 2) {
    base.push_back(p);
    if (p + 1 <= limit) base.push_back(p + 1);
  }
  r.products = productset(IntegerSet({1, 2}, 1, 2),
                          IntegerSet::from_elements(std::move(base)))
                   .restrict(1, limit);
  const auto cmp = windowed_equal(r.sums, r.products, 1, limit);
  r.pass = cmp.equal;
  r.first_mismatch = cmp.first_mismatch;
  return r;
}

GammaSplit strip_gamma_part(std::uint64_t a, const GammaSemigroup& g) {
  require(a >= 1, "strip_gamma_part: a must be >= 1");
  std::uint64_t d = 1;
  for (auto n : g.generators()) {
    while (a % n == 0) {
      a /= n;
      d *= n;
    }
  }
  return {a, d};
}

MPrimitivityReport mprimitivity_scan(const GammaSemigroup& g, unsigned k,
                                     bool cumulative, std::uint64_t limit,
                                     const SearchBounds& bounds) {
  require(k >= 2, "mprimitivity_scan: k must be >= 2");
  MPrimitivityReport r{g, k, cumulative, limit, bounds, 0, {}};
  const IntegerSet target = h_family(g, k, cumulative, limit);
  r.target_size = target.size();
  if (!target.empty()) {
    r.candidates =
        decompose_search(target, DecompositionKind::Multiplicative, bounds);
  }
  return r;
}

}  // namespace friable
