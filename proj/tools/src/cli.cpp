#include "friable/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "friable/arith.hpp"
#include "friable/error.hpp"
#include "friable/integer_set.hpp"
#include "friable/mwitness.hpp"
#include "friable/semigroup.hpp"
#include "friable/sets.hpp"
#include "friable/sieve.hpp"
#include "friable/sunit.hpp"
#include "friable/tuples.hpp"

#ifndef FRIABLE_VERSION
#define FRIABLE_VERSION "0.0.0"
#endif

namespace friable::cli {
namespace {

using json = nlohmann::json;
using U64s = std::vector<std::uint64_t>;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Integers beyond 2^53 lose precision in double-based JSON readers.
constexpr std::uint64_t kJsonExact = std::uint64_t{1} << 53;

json num(std::uint64_t v) { return v > kJsonExact ? json(std::to_string(v)) : json(v); }

json num(std::int64_t v) {
  const std::uint64_t mag = v < 0 ? 0 - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
  return mag > kJsonExact ? json(std::to_string(v)) : json(v);
}

json nums(const U64s& v) {
  json a = json::array();
  for (auto x : v) a.push_back(num(x));
  return a;
}

json nums(const std::vector<std::int64_t>& v) {
  json a = json::array();
  for (auto x : v) a.push_back(num(x));
  return a;
}

// First `list` elements plus bookkeeping; list = 0 means all.
json set_json(const IntegerSet& s, std::size_t list) {
  const std::size_t n = list == 0 ? s.size() : std::min(list, s.size());
  return json{{"count", num(static_cast<std::uint64_t>(s.size()))},
              {"window", {num(s.lo()), num(s.hi())}},
              {"elements", nums(U64s(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(n)))},
              {"truncated", n < s.size()}};
}

std::uint64_t parse_u64(const std::string& flag, const std::string& text) {
  std::uint64_t v = 0;
  std::size_t pos = 0;
  try {
    if (text.empty() || text[0] == '-') throw std::invalid_argument(text);
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    throw UsageError(flag + ": expected a non-negative integer, got '" + text + "'");
  }
  if (pos != text.size()) {
    throw UsageError(flag + ": expected a non-negative integer, got '" + text + "'");
  }
  return v;
}

std::int64_t parse_i64(const std::string& flag, const std::string& text) {
  std::int64_t v = 0;
  std::size_t pos = 0;
  try {
    v = std::stoll(text, &pos);
  } catch (const std::exception&) {
    throw UsageError(flag + ": expected an integer, got '" + text + "'");
  }
  if (pos != text.size()) throw UsageError(flag + ": expected an integer, got '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& flag, const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.empty() || (!text.empty() && text.back() == ',')) {
    throw UsageError(flag + ": expected a comma-separated list, got '" + text + "'");
  }
  return parts;
}

U64s parse_u64_list(const std::string& flag, const std::string& text) {
  U64s out;
  for (const auto& p : split(flag, text)) out.push_back(parse_u64(flag, p));
  return out;
}

std::vector<std::int64_t> parse_i64_list(const std::string& flag, const std::string& text) {
  std::vector<std::int64_t> out;
  for (const auto& p : split(flag, text)) out.push_back(parse_i64(flag, p));
  return out;
}

U64s parse_b(const std::string& text) {
  U64s b = parse_u64_list("--b", text);
  std::sort(b.begin(), b.end());
  if (std::adjacent_find(b.begin(), b.end()) != b.end()) {
    throw UsageError("--b: repeated element in '" + text + "'");
  }
  return b;
}

GammaSemigroup parse_gamma(const std::string& text) {
  try {
    return GammaSemigroup(parse_u64_list("--gamma", text));
  } catch (const ContractViolation& e) {
    throw UsageError(std::string("--gamma: ") + e.what());
  }
}

void need(bool ok, const std::string& flag, const std::string& what) {
  if (!ok) throw UsageError(flag + ": " + what);
}

// Flag storage shared by every subcommand.
struct Flags {
  bool json = false;
  unsigned threads = 0;
  std::string cache;
  std::uint64_t limit = 0;
  std::uint64_t list = 0;
  std::string b;
  std::string gamma;
  unsigned k = 0;
  bool le = false;
  bool star = false;
  std::uint64_t n0 = 0;
  std::uint64_t height = 0;
  std::uint64_t eps_height = 0;
  std::string coeffs;
  std::size_t max_b_size = 0;
  std::uint64_t max_b_elem = 0;
  std::string window;
  std::string offsets;
  std::string policy;
  bool shifted = false;
  bool exact = false;
  std::string kind;
  std::string input;
  std::uint64_t lo = 0;
  bool composite = false;
  bool consecutive = false;
  std::uint64_t t_hi = 0;
  std::uint64_t t1 = 0;
  std::uint64_t t2 = 0;
  std::uint64_t n = 0;
  std::int64_t c = 0;
  unsigned cap = 0;
};

struct Report {
  std::string command;
  json params = json::object();
  json result = json::object();
  json witnesses = json::array();
};

using Handler = std::function<int(const Flags&, Report&)>;

// Loads the cached sieve when it is large enough, otherwise builds one (and
// writes it when a cache path was given).
PrimeSieve obtain_sieve(const Flags& f, std::uint64_t limit, Report& r) {
  const SieveOptions opts{std::uint64_t{1} << 31, f.threads};
  if (f.cache.empty()) {
    r.params["cache"] = nullptr;
    return PrimeSieve(limit, opts);
  }
  r.params["cache"] = f.cache;
  if (std::filesystem::exists(f.cache)) {
    std::optional<PrimeSieve> s;
    try {
      s.emplace(PrimeSieve::load(f.cache));
    } catch (const std::exception& e) {
      throw UsageError("--cache: " + f.cache + ": " + e.what());
    }
    if (s->limit() >= limit) return std::move(*s);
  }
  PrimeSieve s(limit, opts);
  s.save(f.cache);
  return s;
}

int cmd_sieve(const Flags& f, Report& r) {
  r.params["limit"] = num(f.limit);
  r.params["list"] = num(f.list);
  need(f.limit >= 1 && f.limit < kValueCap, "--limit", "must be in [1, 2^63)");
  const PrimeSieve s = obtain_sieve(f, f.limit, r);
  const auto ps = s.primes(0, f.limit);
  const std::size_t shown = std::min<std::size_t>(f.list, ps.size());
  r.result["count"] = num(static_cast<std::uint64_t>(ps.size()));
  r.result["largest"] = ps.empty() ? json(nullptr) : num(ps.back());
  r.result["primes"] = nums(U64s(ps.begin(), ps.begin() + static_cast<std::ptrdiff_t>(shown)));
  return kExitPass;
}

int cmd_smooth(const Flags& f, Report& r) {
  YPolicy policy = YPolicy::composites();
  try {
    policy = YPolicy::parse(f.policy);
  } catch (const ContractViolation& e) {
    throw UsageError(std::string("--policy: ") + e.what());
  }
  r.params["limit"] = num(f.limit);
  r.params["policy"] = policy.to_string();
  r.params["shifted"] = f.shifted;
  r.params["list"] = num(f.list);
  need(f.limit >= (f.shifted ? 2u : 1u), "--limit", f.shifted ? "must be >= 2" : "must be >= 1");
  const IntegerSet s = f.shifted ? shifted_smooth_set(policy, f.limit) : smooth_set(policy, f.limit);
  r.result = set_json(s, f.list);
  return kExitPass;
}

int cmd_verify_thm1(const Flags& f, Report& r) {
  r.params["limit"] = num(f.limit);
  need(f.limit >= 20, "--limit", "must be >= 20");
  const auto rep = verify_theorem1(f.limit);
  r.result["pass"] = rep.pass;
  r.result["first_mismatch"] = rep.first_mismatch ? num(*rep.first_mismatch) : json(nullptr);
  r.result["a_count"] = num(static_cast<std::uint64_t>(rep.a_count));
  r.result["sum_count"] = num(static_cast<std::uint64_t>(rep.sum_count));
  r.result["composite_count"] = num(static_cast<std::uint64_t>(rep.composite_count));
  r.result["b"] = nums(U64s{0, 1, 3, 5});
  return rep.pass ? kExitPass : kExitFail;
}

OffsetTuple parse_offsets(const std::string& text) {
  if (text.empty()) throw UsageError("--offsets: required");
  return OffsetTuple(parse_i64_list("--offsets", text));
}

int cmd_tuple_admissible(const Flags& f, Report& r) {
  const OffsetTuple t = parse_offsets(f.offsets);
  r.params["offsets"] = nums(t.offsets());
  const bool adm = is_admissible(t);
  json full = json::array();
  for (std::uint32_t p : small_primes(static_cast<std::uint32_t>(t.size()))) {
    std::vector<bool> seen(p, false);
    for (auto u : t.offsets()) seen[static_cast<std::size_t>(((u % p) + p) % p)] = true;
    if (std::all_of(seen.begin(), seen.end(), [](bool v) { return v; })) full.push_back(p);
  }
  r.result["admissible"] = adm;
  r.result["covering_primes"] = full;
  return adm ? kExitPass : kExitFail;
}

int cmd_tuple_select(const Flags& f, Report& r) {
  const U64s b = parse_b(f.b);
  if (b.size() != 3 || b[0] != 0) throw UsageError("--b: expected 0,b2,b3 with 0 < b2 < b3");
  r.params["b"] = nums(b);
  const auto sel = select_triple(b[1], b[2]);
  r.result["case"] = to_string(sel.which);
  r.result["tuple"] = nums(sel.tuple.offsets());
  r.result["admissible"] = is_admissible(sel.tuple);
  r.result["covers"] = covers(b, sel.tuple);
  return kExitPass;
}

int cmd_tuple_find(const Flags& f, Report& r) {
  const OffsetTuple t = parse_offsets(f.offsets);
  need(f.lo <= f.limit, "--lo", "must not exceed --limit");
  need(is_admissible(t), "--offsets", "tuple is not admissible");
  r.params["offsets"] = nums(t.offsets());
  r.params["lo"] = num(f.lo);
  r.params["limit"] = num(f.limit);
  r.params["composite"] = f.composite;
  r.params["consecutive"] = f.consecutive;
  r.params["list"] = num(f.list);
  if (t.min() < 0 && f.lo < static_cast<std::uint64_t>(-t.min())) {
    throw UsageError("--lo: n + min(offsets) must stay positive");
  }
  const std::uint64_t top = f.limit + static_cast<std::uint64_t>(std::max<std::int64_t>(t.max(), 0));
  const PrimeSieve sieve = obtain_sieve(f, top + 1, r);
  const auto found = find_constellation(t, f.lo, f.limit, {f.composite, f.consecutive}, sieve);
  const std::size_t shown = f.list == 0 ? found.size() : std::min<std::size_t>(f.list, found.size());
  r.result["count"] = num(static_cast<std::uint64_t>(found.size()));
  r.result["admissible"] = is_admissible(t);
  r.result["first"] = nums(U64s(found.begin(), found.begin() + static_cast<std::ptrdiff_t>(shown)));
  return found.empty() ? kExitInconclusive : kExitPass;
}

int cmd_witness_add(const Flags& f, Report& r) {
  const U64s b = parse_b(f.b);
  r.params["b"] = nums(b);
  r.params["n0"] = num(f.n0);
  r.params["limit"] = num(f.limit);
  need((b.size() == 2 || b.size() == 3) && b[0] == 0, "--b", "expected 0,b2 or 0,b2,b3");
  need(f.n0 >= 9, "--n0", "must be >= 9");
  need(f.limit < kValueCap / 2, "--limit", "must be < 2^62");
  const PrimeSieve sieve = obtain_sieve(f, f.limit + b.back() + 1, r);
  const auto w = additive_witness(b, f.n0, f.limit, sieve);
  r.result["found"] = w.has_value();
  if (!w) return kExitInconclusive;
  const bool ok = validate(*w);
  r.result["n"] = num(w->n);
  r.result["validated"] = ok;
  json jw{{"kind", "additive"},
          {"b", nums(w->b)},
          {"tuple", nums(w->tuple.offsets())},
          {"case", w->which ? json(to_string(*w->which)) : json(nullptr)},
          {"n0", num(w->n0)},
          {"n", num(w->n)},
          {"primes", nums(w->primes)}};
  r.witnesses.push_back(jw);
  return ok ? kExitPass : kExitFail;
}

json plan_json(const CrtWitnessPlan& p) {
  json system = json::array();
  for (const auto& c : p.system) system.push_back({num(c.residue), num(c.modulus)});
  return json{{"p_set", nums(p.p_set)},   {"q1", num(p.q1)},
              {"q2", num(p.q2)},          {"system", system},
              {"x0", num(p.x0)},          {"n_cap", num(p.n_cap)},
              {"prog_step", num(p.prog_step)}, {"prog_offset", num(p.prog_offset)}};
}

int cmd_witness_mul(const Flags& f, Report& r) {
  const U64s b = parse_b(f.b);
  r.params["b"] = nums(b);
  r.params["n0"] = num(f.n0);
  r.params["t_hi"] = num(f.t_hi);
  need(b.size() >= 2 && b[0] >= 1, "--b", "expected at least two positive elements");
  need(f.n0 >= 2, "--n0", "must be >= 2");
  const auto w = multiplicative_witness(b, f.n0, f.t_hi);
  r.result["found"] = w.has_value();
  if (!w) return kExitInconclusive;
  const auto checks = recheck(*w);
  const bool ok = checks.all() && (!w->plan || !check_plan(*w->plan));
  r.result["n"] = num(w->n);
  r.result["branch"] = to_string(w->branch);
  r.result["validated"] = ok;
  json nd = json::array();
  for (bool v : checks.non_divisible) nd.push_back(v);
  json jw{{"kind", "multiplicative"},
          {"b", nums(w->b)},
          {"branch", to_string(w->branch)},
          {"n0", num(w->n0)},
          {"n", num(w->n)},
          {"t", num(w->t)},
          {"plan", w->plan ? plan_json(*w->plan) : json(nullptr)},
          {"checks",
           {{"n_composite", checks.n_composite},
            {"n_above_n0", checks.n_above_n0},
            {"shifted_prime", checks.shifted_prime ? json(*checks.shifted_prime) : json(nullptr)},
            {"non_divisible", nd}}},
          {"transcript", w->transcript}};
  r.witnesses.push_back(jw);
  return ok ? kExitPass : kExitFail;
}

int cmd_semigroup_list(const Flags& f, Report& r) {
  const GammaSemigroup g = parse_gamma(f.gamma);
  r.params["gamma"] = nums(g.generators());
  r.params["limit"] = num(f.limit);
  r.params["list"] = num(f.list);
  need(f.limit >= 1, "--limit", "must be >= 1");
  r.result = set_json(enumerate_semigroup(g, f.limit), f.list);
  return kExitPass;
}

int cmd_hk(const Flags& f, Report& r) {
  const GammaSemigroup g = parse_gamma(f.gamma);
  if (f.k < 1) throw UsageError("--k: must be >= 1");
  r.params["gamma"] = nums(g.generators());
  r.params["k"] = f.k;
  r.params["le"] = f.le;
  r.params["star"] = f.star;
  r.params["limit"] = num(f.limit);
  r.params["list"] = num(f.list);
  need(f.limit >= 1, "--limit", "must be >= 1");
  const IntegerSet s = f.star ? h_star_family(g, f.k, f.le, f.limit) : h_family(g, f.k, f.le, f.limit);
  r.result = set_json(s, f.list);
  return kExitPass;
}

int cmd_verify_exception(const Flags& f, Report& r) {
  r.params["limit"] = num(f.limit);
  need(f.limit >= 8 && f.limit < kValueCap / 2, "--limit", "must be in [8, 2^62)");
  const auto rep = verify_exception(f.limit);
  r.result["pass"] = rep.pass;
  r.result["first_mismatch"] = rep.first_mismatch ? num(*rep.first_mismatch) : json(nullptr);
  r.result["count"] = num(static_cast<std::uint64_t>(rep.sums.size()));
  r.result["elements"] = nums(rep.sums.vec());
  return rep.pass ? kExitPass : kExitFail;
}

json candidate_json(const DecompositionCandidate& c, std::size_t list, bool rechecked) {
  const std::size_t n = list == 0 ? c.c.size() : std::min<std::size_t>(list, c.c.size());
  return json{{"b", nums(c.b)},
              {"c_count", num(static_cast<std::uint64_t>(c.c.size()))},
              {"c_head", nums(U64s(c.c.begin(), c.c.begin() + static_cast<std::ptrdiff_t>(n)))},
              {"coverage", {num(c.coverage_lo), num(c.coverage_hi)}},
              {"rechecked", rechecked}};
}

int cmd_decompose(const Flags& f, Report& r) {
  DecompositionKind kind;
  if (f.kind == "additive") {
    kind = DecompositionKind::Additive;
  } else if (f.kind == "multiplicative") {
    kind = DecompositionKind::Multiplicative;
  } else {
    throw UsageError("--kind: expected additive or multiplicative, got '" + f.kind + "'");
  }
  IntegerSet target;
  if (!f.input.empty()) {
    std::ifstream in(f.input);
    if (!in) throw UsageError("--input: cannot open '" + f.input + "'");
    try {
      target = IntegerSet::read_text(in);
    } catch (const ContractViolation& e) {
      throw UsageError(std::string("--input: ") + e.what());
    }
    r.params["input"] = f.input;
  } else {
    YPolicy policy = YPolicy::composites();
    try {
      policy = YPolicy::parse(f.policy);
    } catch (const ContractViolation& e) {
      throw UsageError(std::string("--policy: ") + e.what());
    }
    if (f.limit == 0) throw UsageError("--limit: required unless --input is given");
    target = smooth_set(policy, f.limit);
    r.params["policy"] = policy.to_string();
    r.params["limit"] = num(f.limit);
  }
  if (!f.window.empty()) {
    const U64s w = parse_u64_list("--window", f.window);
    if (w.size() != 2 || w[0] > w[1]) throw UsageError("--window: expected LO,HI with LO <= HI");
    if (w[0] < target.lo() || w[1] > target.hi()) {
      throw UsageError("--window: must lie inside the target window [" +
                       std::to_string(target.lo()) + ", " + std::to_string(target.hi()) + "]");
    }
    target = target.restrict(w[0], w[1]);
  }
  if (target.empty()) throw UsageError("--window: target is empty on this window");
  r.params["kind"] = to_string(kind);
  r.params["window"] = {num(target.lo()), num(target.hi())};
  r.params["max_b_size"] = num(static_cast<std::uint64_t>(f.max_b_size));
  r.params["max_b_elem"] = num(f.max_b_elem);
  r.params["mode"] = f.exact ? "exact" : "shrunk";
  r.params["list"] = num(f.list);
  need(f.max_b_size >= 2, "--max-b-size", "must be >= 2");
  need(f.max_b_elem >= 1, "--max-b-elem", "must be >= 1");
  if (kind == DecompositionKind::Multiplicative) {
    need(target.vec().front() >= 1, "--window", "multiplicative targets must be positive");
  }
  const SearchBounds bounds{f.max_b_size, f.max_b_elem, f.threads,
                            f.exact ? WindowMode::Exact : WindowMode::Shrunk};
  const auto found = decompose_search(target, kind, bounds);
  json cands = json::array();
  bool all_ok = true;
  for (const auto& c : found) {
    const bool ok = recheck_candidate(target, c);
    all_ok = all_ok && ok;
    cands.push_back(candidate_json(c, f.list, ok));
  }
  r.result["target_count"] = num(static_cast<std::uint64_t>(target.size()));
  r.result["count"] = num(static_cast<std::uint64_t>(found.size()));
  r.result["candidates"] = cands;
  if (!all_ok) return kExitFail;
  return found.empty() ? kExitInconclusive : kExitPass;
}

int cmd_sunit(const Flags& f, Report& r) {
  const GammaSemigroup g = parse_gamma(f.gamma);
  if (f.coeffs.empty()) throw UsageError("--coeffs: required");
  std::vector<Rational> coeffs;
  json shown = json::array();
  for (const auto& p : split("--coeffs", f.coeffs)) {
    try {
      coeffs.push_back(Rational::parse(p));
    } catch (const ContractViolation& e) {
      throw UsageError(std::string("--coeffs: ") + e.what());
    }
    shown.push_back(coeffs.back().to_string());
  }
  r.params["coeffs"] = shown;
  r.params["gamma"] = nums(g.generators());
  r.params["height"] = num(f.height);
  need(coeffs.size() >= 2 && coeffs.size() <= 16, "--coeffs", "expected 2 to 16 coefficients");
  need(std::none_of(coeffs.begin(), coeffs.end(), [](const Rational& a) { return a.num == 0; }),
       "--coeffs", "coefficients must be nonzero");
  need(f.height >= 1 && f.height < (std::uint64_t{1} << 40), "--height", "must be in [1, 2^40)");
  const SUnitEquation eq(std::move(coeffs), g);
  const auto classes = solve_sunit(eq, f.height);
  json out = json::array();
  std::uint64_t nondeg = 0;
  for (const auto& c : classes) {
    out.push_back({{"x", nums(c.representative)}, {"degenerate", c.degenerate}});
    nondeg += !c.degenerate;
  }
  r.result["integer_coeffs"] = nums(eq.integer_coeffs());
  r.result["count"] = num(static_cast<std::uint64_t>(classes.size()));
  r.result["nondegenerate"] = num(nondeg);
  r.result["classes"] = out;
  return kExitPass;
}

int cmd_l_set(const Flags& f, Report& r) {
  const GammaSemigroup g = parse_gamma(f.gamma);
  need(f.k >= 2 && f.k <= 8, "--k", "must be in [2, 8]");
  need(f.height >= 1 && f.height < (std::uint64_t{1} << 32), "--height", "must be in [1, 2^32)");
  need(f.eps_height >= 1 && f.eps_height < (std::uint64_t{1} << 24), "--eps-height",
       "must be in [1, 2^24)");
  r.params["gamma"] = nums(g.generators());
  r.params["k"] = f.k;
  r.params["height"] = num(f.height);
  r.params["eps_height"] = num(f.eps_height);
  const auto rep = corollary_l_set(g, f.k, f.height, f.eps_height);
  r.result["coordinates"] = nums(rep.coordinates.vec());
  r.result["count"] = num(static_cast<std::uint64_t>(rep.coordinates.size()));
  r.result["solutions"] = num(rep.solutions);
  return kExitPass;
}

int cmd_two_term(const Flags& f, Report& r) {
  r.params["t1"] = num(f.t1);
  r.params["t2"] = num(f.t2);
  r.params["n"] = num(f.n);
  r.params["c"] = num(f.c);
  r.params["cap"] = f.cap;
  need(f.t1 >= 1, "--t1", "must be >= 1");
  need(f.t2 >= 1, "--t2", "must be >= 1");
  need(f.n >= 2, "--n", "must be >= 2");
  TwoTermReport rep;
  try {
    rep = solve_two_term(f.t2, f.t1, f.n, f.c, f.cap);
  } catch (const ContractViolation& e) {
    throw UsageError(std::string("--cap: ") + e.what());
  }
  json sols = json::array();
  for (auto [a1, a2] : rep.solutions) sols.push_back({a1, a2});
  r.result["solutions"] = sols;
  r.result["count"] = num(static_cast<std::uint64_t>(rep.solutions.size()));
  r.result["min_exponent_bound"] = rep.min_exponent_bound ? json(*rep.min_exponent_bound) : json(nullptr);
  return kExitPass;
}

int cmd_mprim_scan(const Flags& f, Report& r) {
  const GammaSemigroup g = parse_gamma(f.gamma);
  if (f.k < 2) throw UsageError("--k: must be >= 2");
  r.params["gamma"] = nums(g.generators());
  r.params["k"] = f.k;
  r.params["le"] = f.le;
  r.params["limit"] = num(f.limit);
  r.params["max_b_size"] = num(static_cast<std::uint64_t>(f.max_b_size));
  r.params["max_b_elem"] = num(f.max_b_elem);
  r.params["list"] = num(f.list);
  need(f.limit >= 1, "--limit", "must be >= 1");
  need(f.max_b_size >= 2, "--max-b-size", "must be >= 2");
  need(f.max_b_elem >= 1, "--max-b-elem", "must be >= 1");
  const auto rep = mprimitivity_scan(g, f.k, f.le, f.limit, {f.max_b_size, f.max_b_elem, f.threads});
  const IntegerSet target = h_family(g, f.k, f.le, f.limit);
  json cands = json::array();
  std::vector<U64s> bs;
  bool all_ok = true;
  for (const auto& c : rep.candidates) {
    const bool ok = recheck_candidate(target, c);
    all_ok = all_ok && ok;
    cands.push_back(candidate_json(c, f.list, ok));
    bs.push_back(c.b);
  }
  // Only H_{<=3} over {2} is expected to factor; there B = {1, 2}.
  const bool exceptional = g.generators() == U64s{2} && f.k == 3 && f.le;
  const bool expected = exceptional ? bs == std::vector<U64s>{{1, 2}} : bs.empty();
  r.result["target_size"] = num(static_cast<std::uint64_t>(rep.target_size));
  r.result["count"] = num(static_cast<std::uint64_t>(rep.candidates.size()));
  r.result["candidates"] = cands;
  r.result["expected"] = exceptional ? json::array({nums(U64s{1, 2})}) : json::array();
  r.result["as_expected"] = expected;
  return all_ok && expected ? kExitPass : kExitFail;
}

void print_human(std::ostream& out, const json& report) {
  out << report["command"].get<std::string>() << "\n";
  for (const auto& [k, v] : report["params"].items()) out << "  --" << k << " " << v.dump() << "\n";
  out << "result\n";
  for (const auto& [k, v] : report["result"].items()) out << "  " << k << ": " << v.dump() << "\n";
  for (const auto& w : report["witnesses"]) {
    out << "witness (" << w["kind"].get<std::string>() << ")\n";
    for (const auto& [k, v] : w.items()) {
      if (k == "transcript") {
        for (const auto& line : v) out << "  | " << line.get<std::string>() << "\n";
      } else if (k != "kind") {
        out << "  " << k << ": " << v.dump() << "\n";
      }
    }
  }
  out << "elapsed_ms: " << report["elapsed_ms"].dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Friable-integer and S-unit experiments", "friable"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", FRIABLE_VERSION);

  Flags f;
  app.add_flag("--json", f.json, "Emit the JSON report");
  app.add_option("--threads", f.threads, "Worker threads (0 = available parallelism)");

  Handler handler;
  std::string command;
  auto bind = [&](CLI::App* sub, std::string name, Handler h) {
    sub->callback([&, name, h] {
      command = name;
      handler = h;
    });
  };
  // Defaults are applied per subcommand since only one runs.
  auto list = [&](CLI::App* sub, std::uint64_t def) {
    sub->add_option("--list", f.list, "Elements to print (0 = all)")->default_val(def);
  };

  auto* sieve = app.add_subcommand("sieve", "Count and list primes up to a limit");
  sieve->add_option("--limit", f.limit, "Upper bound")->required();
  sieve->add_option("--cache", f.cache, "Sieve cache file");
  list(sieve, 20);
  bind(sieve, "sieve", cmd_sieve);

  auto* smooth = app.add_subcommand("smooth", "Enumerate y-smooth integers");
  smooth->add_option("--limit", f.limit, "Upper bound")->required();
  smooth->add_option("--policy", f.policy, "composites | fixed:Y | log:C")->default_val("composites");
  smooth->add_flag("--shifted", f.shifted, "List m + 1 for smooth m");
  list(smooth, 50);
  bind(smooth, "smooth", cmd_smooth);

  auto* thm1 = app.add_subcommand("verify-thm1", "Check (A + {0,1,3,5}) = composites on [9, limit]");
  thm1->add_option("--limit", f.limit, "Upper bound (>= 20)")->default_val(1000000);
  bind(thm1, "verify-thm1", cmd_verify_thm1);

  auto* tuple = app.add_subcommand("tuple", "Admissible tuples and constellations");
  tuple->require_subcommand(1);
  auto* adm = tuple->add_subcommand("admissible", "Test admissibility");
  adm->add_option("--offsets", f.offsets, "Offsets, e.g. 0,2,6")->required();
  bind(adm, "tuple admissible", cmd_tuple_admissible);
  auto* sel = tuple->add_subcommand("select-triple", "Pick the covering tuple for B = {0,b2,b3}");
  sel->add_option("--b", f.b, "0,b2,b3")->required();
  bind(sel, "tuple select-triple", cmd_tuple_select);
  auto* find = tuple->add_subcommand("find", "Search for prime constellations");
  find->add_option("--offsets", f.offsets, "Offsets, e.g. 0,2,6")->required();
  find->add_option("--limit", f.limit, "Largest n")->required();
  find->add_option("--lo", f.lo, "Smallest n")->default_val(1);
  find->add_option("--cache", f.cache, "Sieve cache file");
  find->add_flag("--composite", f.composite, "Require n composite");
  find->add_flag("--consecutive", f.consecutive, "Require consecutive primes");
  list(find, 20);
  bind(find, "tuple find", cmd_tuple_find);

  auto* witness = app.add_subcommand("witness", "Non-decomposability witnesses");
  witness->require_subcommand(1);
  auto* wadd = witness->add_subcommand("add", "Additive witness for |B| = 2 or 3");
  wadd->add_option("--b", f.b, "0,b2[,b3]")->required();
  wadd->add_option("--n0", f.n0, "Witness lower bound (>= 9)")->default_val(9);
  wadd->add_option("--limit", f.limit, "Search bound")->default_val(10000000);
  wadd->add_option("--cache", f.cache, "Sieve cache file");
  bind(wadd, "witness add", cmd_witness_add);
  auto* wmul = witness->add_subcommand("mul", "Multiplicative witness");
  wmul->add_option("--b", f.b, "Elements of B")->required();
  wmul->add_option("--n0", f.n0, "Witness lower bound (>= 2)")->default_val(10);
  wmul->add_option("--t-hi", f.t_hi, "Largest progression index")->default_val(1000000);
  bind(wmul, "witness mul", cmd_witness_mul);

  auto* semi = app.add_subcommand("semigroup", "The semigroup {Γ}");
  semi->require_subcommand(1);
  auto* slist = semi->add_subcommand("list", "Elements of {Γ} up to a limit");
  slist->add_option("--gamma", f.gamma, "Pairwise coprime generators")->required();
  slist->add_option("--limit", f.limit, "Upper bound")->required();
  list(slist, 0);
  bind(slist, "semigroup list", cmd_semigroup_list);

  auto* hk = app.add_subcommand("hk", "Sums of k pairwise coprime elements of {Γ}");
  hk->add_option("--gamma", f.gamma, "Pairwise coprime generators")->required();
  hk->add_option("--k", f.k, "Number of summands")->required();
  hk->add_flag("--le", f.le, "At most k summands");
  hk->add_flag("--star", f.star, "Drop the coprimality condition");
  hk->add_option("--limit", f.limit, "Upper bound")->required();
  list(hk, 0);
  bind(hk, "hk", cmd_hk);

  auto* vex = app.add_subcommand("verify-exception", "Check H_{<=3} over {2} against {1,2}·{2^b, 2^b+1}");
  vex->add_option("--limit", f.limit, "Upper bound (>= 8)")->default_val(std::uint64_t{1} << 20);
  bind(vex, "verify-exception", cmd_verify_exception);

  auto* dec = app.add_subcommand("decompose", "Search for B ⊕ C decompositions of a set");
  dec->add_option("--input", f.input, "IntegerSet text file");
  dec->add_option("--policy", f.policy, "Smooth-set policy when no --input")->default_val("composites");
  dec->add_option("--limit", f.limit, "Upper bound for the smooth set");
  dec->add_option("--window", f.window, "LO,HI restriction of the target");
  dec->add_option("--kind", f.kind, "additive | multiplicative")->default_val("additive");
  dec->add_option("--max-b-size", f.max_b_size, "Largest |B|")->default_val(2);
  dec->add_option("--max-b-elem", f.max_b_elem, "Largest element of B")->default_val(10);
  dec->add_flag("--exact", f.exact, "Require B ⊕ C to equal the target on the whole window");
  list(dec, 10);
  bind(dec, "decompose", cmd_decompose);

  auto* sunit = app.add_subcommand("sunit", "Solve a_1 x_1 + ... + a_m x_m = 0 over {Γ}");
  sunit->add_option("--coeffs", f.coeffs, "Coefficients p or p/q")->required();
  sunit->add_option("--gamma", f.gamma, "Pairwise coprime generators")->required();
  sunit->add_option("--height", f.height, "Largest coordinate")->default_val(100);
  bind(sunit, "sunit", cmd_sunit);

  auto* lset = app.add_subcommand("l-set", "Coordinates of non-degenerate block equations");
  lset->add_option("--gamma", f.gamma, "Pairwise coprime generators")->required();
  lset->add_option("--k", f.k, "Largest block size")->required();
  lset->add_option("--height", f.height, "Largest coordinate")->default_val(100);
  lset->add_option("--eps-height", f.eps_height, "Largest multiplier")->default_val(10);
  bind(lset, "l-set", cmd_l_set);

  auto* two = app.add_subcommand("two-term", "Solve t2 n^a1 - t1 n^a2 = c");
  two->add_option("--t1", f.t1, "t1 >= 1")->required();
  two->add_option("--t2", f.t2, "t2 >= 1")->required();
  two->add_option("--n", f.n, "Base n >= 2")->required();
  two->add_option("--c", f.c, "Right-hand side")->required();
  two->add_option("--cap", f.cap, "Largest exponent")->default_val(40);
  bind(two, "two-term", cmd_two_term);

  auto* mprim = app.add_subcommand("mprim-scan", "Multiplicative decomposition scan of H_k");
  mprim->add_option("--gamma", f.gamma, "Pairwise coprime generators")->required();
  mprim->add_option("--k", f.k, "Number of summands (>= 2)")->required();
  mprim->add_flag("--le", f.le, "At most k summands");
  mprim->add_option("--limit", f.limit, "Upper bound")->default_val(100000);
  mprim->add_option("--max-b-size", f.max_b_size, "Largest |B|")->default_val(3);
  mprim->add_option("--max-b-elem", f.max_b_elem, "Largest element of B")->default_val(100);
  list(mprim, 10);
  bind(mprim, "mprim-scan", cmd_mprim_scan);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::CallForVersion&) {
    out << FRIABLE_VERSION << "\n";
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (!handler) {
    err << "usage error: a subcommand is required\n";
    return kExitUsage;
  }

  Report r;
  r.command = command;
  int code = kExitPass;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    code = handler(f, r);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ContractViolation& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const OverflowError& e) {
    err << "overflow: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();

  json report{{"command", r.command},
              {"params", r.params},
              {"result", r.result},
              {"witnesses", r.witnesses},
              {"elapsed_ms", ms},
              {"version", FRIABLE_VERSION}};
  if (f.json) {
    out << report.dump(2) << "\n";
  } else {
    print_human(out, report);
  }
  return code;
}

}  // namespace friable::cli
