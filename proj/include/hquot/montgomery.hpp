#pragma once

#include "hquot/ints.hpp"

// Montgomery arithmetic for odd moduli, in two widths: R = 2^64 for moduli
// below 2^64 and R = 2^128 for the double-word moduli used when working
// mod p^2 with p beyond 2^32.
// Peter L. Montgomery, Modular multiplication without trial division,
// Math. Comp. 44 (1985), 519-521.

namespace hquot {

class Montgomery64 {
 public:
  explicit Montgomery64(u64 m)
      : m_(m), minv_(invert_u64(m)), r1_((0 - m) % m) {
    r2_ = static_cast<u64>(u128(r1_) * r1_ % m);
  }

  u64 modulus() const { return m_; }
  u64 one() const { return r1_; }  // Montgomery form of 1

  u64 add(u64 a, u64 b) const {
    const u64 c = (a >= m_ - b) ? m_ : 0;  // b == 0 never triggers: a < m
    return a + b - c;
  }

  u64 sub(u64 a, u64 b) const {
    const u64 c = (a < b) ? m_ : 0;
    return a - b + c;
  }

  // REDC(a*b): returns a*b/R mod m, canonical in [0, m).
  u64 mul(u64 a, u64 b) const {
    const u128 t = u128(a) * b;
    const u64 q = static_cast<u64>(t) * minv_;       // q*m == t (mod 2^64)
    const u64 h = hi64(u128(q) * m_);
    const u64 th = hi64(t);
    u64 r = th - h;  // (t - q*m)/2^64, in (-m, m)
    if (th < h) r += m_;
    return r;
  }

  u64 to_mont(u64 x) const { return mul(x, r2_); }    // x < m
  u64 from_mont(u64 x) const { return mul(x, 1); }

  // base in Montgomery form; returns base^e in Montgomery form.
  u64 pow(u64 base, u128 e) const {
    u64 r = r1_, x = base;
    for (; e != 0; e >>= 1) {
      if (e & 1) r = mul(r, x);
      x = mul(x, x);
    }
    return r;
  }

  // m^{-1} mod 2^64 by Newton iteration; m odd.
  static constexpr u64 invert_u64(u64 m) {
    u64 x = 1;
    for (int i = 0; i < 6; ++i) x *= 2 - m * x;
    return x;
  }

 private:
  u64 m_, minv_, r1_, r2_;
};

class Montgomery128 {
 public:
  explicit Montgomery128(u128 m)
      : m_(m), minv_(invert_u128(m)), r1_((u128(0) - m) % m) {
    // R^2 mod m by 128 modular doublings of R mod m.
    u128 x = r1_;
    for (int i = 0; i < 128; ++i) x = add(x, x);
    r2_ = x;
  }

  u128 modulus() const { return m_; }
  u128 one() const { return r1_; }

  u128 add(u128 a, u128 b) const {
    const u128 c = (a >= m_ - b) ? m_ : 0;
    return a + b - c;
  }

  u128 sub(u128 a, u128 b) const {
    const u128 c = (a < b) ? m_ : 0;
    return a - b + c;
  }

  u128 mul(u128 a, u128 b) const {
    const U256 t = mul_wide(a, b);
    const u128 q = t.lo * minv_;
    const u128 h = mul_wide(q, m_).hi;
    u128 r = t.hi - h;
    if (t.hi < h) r += m_;
    return r;
  }

  u128 to_mont(u128 x) const { return mul(x, r2_); }
  u128 from_mont(u128 x) const { return mul(x, 1); }

  u128 pow(u128 base, u128 e) const {
    u128 r = r1_, x = base;
    for (; e != 0; e >>= 1) {
      if (e & 1) r = mul(r, x);
      x = mul(x, x);
    }
    return r;
  }

  static constexpr u128 invert_u128(u128 m) {
    u128 x = 1;
    for (int i = 0; i < 7; ++i) x *= 2 - m * x;
    return x;
  }

 private:
  u128 m_, minv_, r1_, r2_;
};

}  // namespace hquot
