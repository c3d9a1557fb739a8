#include "hquot/primes.hpp"

#include <algorithm>
#include <cmath>

#include "hquot/montgomery.hpp"

namespace hquot {

u64 isqrt_u64(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r > n / r) --r;
  while ((r + 1) <= n / (r + 1)) ++r;
  return r;
}

std::vector<u64> small_primes(u64 limit) {
  std::vector<u64> primes;
  if (limit < 2) return primes;
  primes.push_back(2);
  if (limit < 3) return primes;
  // bit i represents the odd number 2i + 3
  const u64 count = (limit - 1) / 2;  // odds in [3, limit]
  std::vector<u64> composite((count + 63) / 64, 0);
  const auto test = [&](u64 i) {
    return (composite[i >> 6] >> (i & 63)) & 1;
  };
  const auto set = [&](u64 i) { composite[i >> 6] |= u64(1) << (i & 63); };
  for (u64 i = 0; i < count; ++i) {
    if (test(i)) continue;
    const u64 p = 2 * i + 3;
    primes.push_back(p);
    if (p > limit / p) continue;
    for (u64 j = (p * p - 3) / 2; j < count; j += p) set(j);
  }
  return primes;
}

void sieve_window(const std::vector<u64>& base, u64 lo, u64 hi,
                  std::vector<u64>& out) {
  out.clear();
  if (hi <= 2 || lo >= hi) return;
  if (lo <= 2) out.push_back(2);
  u64 first = std::max<u64>(lo, 3);
  if ((first & 1) == 0) ++first;
  if (first >= hi) return;

  // bit i represents the odd number first + 2i
  const u64 count = (hi - first + 1) / 2;
  std::vector<u64> composite((count + 63) / 64, 0);
  for (const u64 q : base) {
    if (q == 2) continue;
    if (q > (hi - 1) / q) break;  // q*q >= hi; base is sorted
    u64 start = q * q;
    if (start < first) {
      start = ((first + q - 1) / q) * q;
      if ((start & 1) == 0) start += q;
    }
    for (u64 v = (start - first) / 2; v < count; v += q)
      composite[v >> 6] |= u64(1) << (v & 63);
  }
  for (u64 i = 0; i < count; ++i)
    if (((composite[i >> 6] >> (i & 63)) & 1) == 0)
      out.push_back(first + 2 * i);
}

PrimeSegment primes_in_range(u64 lo, u64 hi) {
  if (lo >= hi) raise(Errc::InvalidArgument, "empty range: lo must be < hi");
  if (hi > kSieveCeiling)
    raise(Errc::RangeTooLarge, "range end exceeds the 2^52 sieve ceiling");
  PrimeSegment seg{lo, hi, {}};
  const std::vector<u64> base = small_primes(isqrt_u64(hi - 1));
  constexpr u64 kWindow = u64(1) << 20;
  std::vector<u64> window;
  for (u64 w = lo; w < hi; w += std::min(kWindow, hi - w)) {
    const u64 w1 = std::min(w + kWindow, hi);
    sieve_window(base, w, w1, window);
    seg.primes.insert(seg.primes.end(), window.begin(), window.end());
    if (w1 == hi) break;
  }
  return seg;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (const u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                      23ull, 29ull, 31ull, 37ull}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  // n odd, n > 37*37 is not guaranteed but n has no factor <= 37
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  const Montgomery64 mg(n);
  const u64 one = mg.one();
  const u64 neg_one = n - one;  // Montgomery form of n - 1
  for (const u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                      23ull, 29ull, 31ull, 37ull}) {
    u64 x = mg.pow(mg.to_mont(a % n), d);
    if (x == one || x == neg_one) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mg.mul(x, x);
      if (x == neg_one) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

}  // namespace hquot
