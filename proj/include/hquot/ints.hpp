#pragma once

#include <cstdint>
#include <string>

namespace hquot {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i128 = __int128;

std::string to_string(u128 x);

constexpr u64 lo64(u128 x) { return static_cast<u64>(x); }
constexpr u64 hi64(u128 x) { return static_cast<u64>(x >> 64); }

// 256-bit value as two 128-bit halves. Covers the 208-bit products that
// arise from multiplying two values below 2^104.
struct U256 {
  u128 lo = 0;
  u128 hi = 0;
};

// Full 128x128 -> 256 bit product.
constexpr U256 mul_wide(u128 a, u128 b) {
  const u64 a0 = lo64(a), a1 = hi64(a);
  const u64 b0 = lo64(b), b1 = hi64(b);
  const u128 p00 = u128(a0) * b0;
  const u128 p01 = u128(a0) * b1;
  const u128 p10 = u128(a1) * b0;
  const u128 p11 = u128(a1) * b1;
  const u128 mid = p01 + p10;  // may wrap; the carry is reinstated below
  const u128 mid_carry = (mid < p01) ? (u128(1) << 64) : 0;
  const u128 lo = p00 + (mid << 64);
  const u128 lo_carry = (lo < p00) ? 1 : 0;
  const u128 hi = p11 + (mid >> 64) + mid_carry + lo_carry;
  return {lo, hi};
}

// a - b, valid only when a >= b.
constexpr U256 sub_wide(U256 a, U256 b) {
  U256 r;
  r.lo = a.lo - b.lo;
  r.hi = a.hi - b.hi - ((a.lo < b.lo) ? 1 : 0);
  return r;
}

// Low 128 bits of x >> s, 0 <= s < 256.
constexpr u128 shr_wide(U256 x, int s) {
  if (s == 0) return x.lo;
  if (s >= 128) return x.hi >> (s - 128);
  return (x.lo >> s) | (x.hi << (128 - s));
}

constexpr int bit_length(u128 x) {
  int n = 0;
  while (x != 0) {
    ++n;
    x >>= 1;
  }
  return n;
}

}  // namespace hquot
