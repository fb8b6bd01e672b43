#include "friable/sieve.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <fstream>
#include <string>
#include <thread>

#include "friable/error.hpp"

namespace friable {

std::vector<std::uint32_t> small_primes(std::uint32_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    out.push_back(static_cast<std::uint32_t>(p));
    for (std::uint64_t m = p * p; m <= limit; m += p) composite[m] = true;
  }
  return out;
}

namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Sieves the bits for integers [seg_lo, seg_hi] into words starting at
// word index seg_lo / 64. seg_lo is a multiple of 64.
void sieve_segment(std::uint64_t seg_lo, std::uint64_t seg_hi,
                   const std::vector<std::uint32_t>& base,
                   std::vector<std::uint64_t>& words) {
  const std::size_t w0 = seg_lo / 64;
  const std::size_t w1 = seg_hi / 64;
  for (std::size_t w = w0; w <= w1; ++w) words[w] = ~std::uint64_t{0};
  for (std::uint64_t p : base) {
    std::uint64_t start = std::max(p * p, (seg_lo + p - 1) / p * p);
    if (start > seg_hi) continue;
    for (std::uint64_t m = start; m <= seg_hi; m += p) {
      words[m / 64] &= ~(std::uint64_t{1} << (m % 64));
    }
  }
  if (seg_lo == 0) words[0] &= ~std::uint64_t{3};
}

}  // namespace

PrimeSieve::PrimeSieve(std::uint64_t limit, const SieveOptions& options)
    : limit_(limit) {
  require(limit >= 1, "sieve: limit must be >= 1");
  require(limit < kValueCap, "sieve: limit must be < 2^63");
  const std::uint64_t nwords = limit / 64 + 1;
  if (nwords * 8 > options.max_bytes) {
    throw ResourceError("sieve: limit " + std::to_string(limit) +
                        " needs " + std::to_string(nwords * 8) +
                        " bytes, budget is " +
                        std::to_string(options.max_bytes));
  }
  words_.assign(nwords, 0);
  const std::uint64_t root = isqrt(limit);
  const auto base = small_primes(static_cast<std::uint32_t>(root));
  const std::uint64_t nseg = limit / kSegmentBits + 1;

  auto run = [&](std::uint64_t first_seg, std::uint64_t stride) {
    for (std::uint64_t s = first_seg; s < nseg; s += stride) {
      const std::uint64_t lo = s * kSegmentBits;
      const std::uint64_t hi = std::min(limit, lo + kSegmentBits - 1);
      sieve_segment(lo, hi, base, words_);
    }
  };

  unsigned threads = options.threads == 0 ? std::thread::hardware_concurrency()
                                          : options.threads;
  threads = static_cast<unsigned>(
      std::clamp<std::uint64_t>(threads, 1, nseg));
  if (threads == 1) {
    run(0, 1);
  } else {
    // Segments are word-aligned, so workers never share a word.
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(run, t, threads);
  }
  // Clear padding bits above limit so equality and serialization are exact.
  const unsigned tail = static_cast<unsigned>(limit % 64) + 1;
  if (tail < 64) words_.back() &= (std::uint64_t{1} << tail) - 1;
}

bool PrimeSieve::is_prime(std::uint64_t n) const {
  if (n > limit_) {
    throw ContractViolation("sieve query " + std::to_string(n) +
                            " exceeds limit " + std::to_string(limit_));
  }
  return (words_[n / 64] >> (n % 64)) & 1U;
}

std::uint64_t PrimeSieve::count() const {
  std::uint64_t c = 0;
  for (auto w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
  return c;
}

std::vector<std::uint64_t> PrimeSieve::primes(std::uint64_t lo,
                                              std::uint64_t hi) const {
  std::vector<std::uint64_t> out;
  hi = std::min(hi, limit_);
  if (lo > hi) return out;
  for (std::uint64_t w = lo / 64; w <= hi / 64; ++w) {
    std::uint64_t bits = words_[w];
    while (bits) {
      const std::uint64_t n = w * 64 + static_cast<unsigned>(std::countr_zero(bits));
      bits &= bits - 1;
      if (n >= lo && n <= hi) out.push_back(n);
    }
  }
  return out;
}

namespace {
constexpr std::array<char, 4> kMagic{'P', 'S', 'V', '1'};
}

void PrimeSieve::save(const std::filesystem::path& path) const {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw ResourceError("cannot open sieve cache for writing: " + path.string());
  os.write(kMagic.data(), kMagic.size());
  std::array<char, 8> lim{};
  for (int i = 0; i < 8; ++i) lim[i] = static_cast<char>((limit_ >> (8 * i)) & 0xFF);
  os.write(lim.data(), lim.size());
  const std::uint64_t nbytes = limit_ / 8 + 1;
  std::vector<char> bytes(nbytes);
  for (std::uint64_t j = 0; j < nbytes; ++j) {
    bytes[j] = static_cast<char>((words_[j / 8] >> (8 * (j % 8))) & 0xFF);
  }
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!os) throw ResourceError("failed writing sieve cache: " + path.string());
}

PrimeSieve PrimeSieve::load(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ResourceError("cannot open sieve cache: " + path.string());
  std::array<char, 4> magic{};
  is.read(magic.data(), magic.size());
  if (!is || magic != kMagic) {
    throw ContractViolation("sieve cache: bad magic in " + path.string());
  }
  std::array<unsigned char, 8> lim{};
  is.read(reinterpret_cast<char*>(lim.data()), lim.size());
  if (!is) throw ContractViolation("sieve cache: truncated header");
  std::uint64_t limit = 0;
  for (int i = 0; i < 8; ++i) limit |= static_cast<std::uint64_t>(lim[i]) << (8 * i);
  if (limit < 1 || limit >= kValueCap) {
    throw ContractViolation("sieve cache: invalid limit");
  }
  const std::uint64_t nbytes = limit / 8 + 1;
  std::vector<unsigned char> bytes(nbytes);
  is.read(reinterpret_cast<char*>(bytes.data()),
          static_cast<std::streamsize>(nbytes));
  if (static_cast<std::uint64_t>(is.gcount()) != nbytes) {
    throw ContractViolation("sieve cache: payload shorter than limit implies");
  }
  if (is.peek() != std::char_traits<char>::eof()) {
    throw ContractViolation("sieve cache: trailing bytes after payload");
  }
  PrimeSieve s;
  s.limit_ = limit;
  s.words_.assign(limit / 64 + 1, 0);
  for (std::uint64_t j = 0; j < nbytes; ++j) {
    s.words_[j / 8] |= static_cast<std::uint64_t>(bytes[j]) << (8 * (j % 8));
  }
  const unsigned tail = static_cast<unsigned>(limit % 64) + 1;
  if (tail < 64 && (s.words_.back() >> tail) != 0) {
    throw ContractViolation("sieve cache: bits set above limit");
  }
  return s;
}

}  // namespace friable
