#include "hquot/modmath.hpp"

#include <algorithm>

#include "hquot/montgomery.hpp"

namespace hquot {

std::string to_string(u128 x) {
  if (x == 0) return "0";
  char buf[40];
  int n = 0;
  while (x != 0) {
    buf[n++] = static_cast<char>('0' + static_cast<unsigned>(x % 10));
    x /= 10;
  }
  std::string s;
  s.reserve(static_cast<size_t>(n));
  while (n > 0) s.push_back(buf[--n]);
  return s;
}

u128 gcd_u128(u128 a, u128 b) {
  while (b != 0) {
    const u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

namespace {

// floor(2^e / m) for m >= 2^64 and e <= 208, by restoring binary division.
// Quotient fits in 128 bits because m >= 2^(bits-1) and e <= 2*bits.
u128 div_pow2(int e, u128 m) {
  u128 q = 0, r = 1;
  for (int i = 0; i < e; ++i) {
    r <<= 1;
    q <<= 1;
    if (r >= m) {
      r -= m;
      q |= 1;
    }
  }
  return q;
}

u128 xgcd_inverse(u128 a, u128 m) {
  i128 r0 = static_cast<i128>(m), r1 = static_cast<i128>(a);
  i128 t0 = 0, t1 = 1;
  while (r1 != 0) {
    const i128 q = r0 / r1;
    r0 -= q * r1;
    std::swap(r0, r1);
    t0 -= q * t1;
    std::swap(t0, t1);
  }
  if (r0 != 1)
    raise(Errc::NotInvertible, "value shares a factor with the modulus");
  if (t0 < 0) t0 += static_cast<i128>(m);
  return static_cast<u128>(t0);
}

}  // namespace

Modulus::Modulus(u128 value) : value_(value), fits64_(value >> 64 == 0) {
  if (value < 2) raise(Errc::InvalidArgument, "modulus must be at least 2");
  if (value >= kModulusCeiling)
    raise(Errc::InvalidArgument, "modulus must be below 2^104");
  if (!fits64_) {
    bits_ = bit_length(value_);
    mu_ = div_pow2(2 * bits_, value_);
  }
}

u128 Modulus::mul(u128 a, u128 b) const {
  if (fits64_) return a * b % value_;  // both halves below 2^64: exact in u128
  // Barrett reduction of the 256-bit product; at most two corrections.
  const U256 t = mul_wide(a, b);
  const u128 x = shr_wide(t, bits_ - 1);        // < 2^(bits+1)
  const u128 qhat = shr_wide(mul_wide(x, mu_), bits_ + 1);
  U256 d = sub_wide(t, mul_wide(qhat, value_));  // < 3m, fits in d.lo
  u128 r = d.lo;
  while (r >= value_) r -= value_;
  return r;
}

u128 Modulus::pow(u128 base, u128 exponent) const {
  if (odd()) {
    if (fits64_) {
      const Montgomery64 mg(static_cast<u64>(value_));
      return mg.from_mont(mg.pow(mg.to_mont(static_cast<u64>(base)), exponent));
    }
    const Montgomery128 mg(value_);
    return mg.from_mont(mg.pow(mg.to_mont(base), exponent));
  }
  u128 r = 1, x = base;
  for (; exponent != 0; exponent >>= 1) {
    if (exponent & 1) r = mul(r, x);
    x = mul(x, x);
  }
  return r;
}

u128 Modulus::inv(u128 a) const { return xgcd_inverse(a, value_); }

Residue mul_mod(Residue a, Residue b, const Modulus& m) {
  return Residue{m.mul(a.value, b.value)};
}

Residue pow_mod(Residue base, u128 exponent, const Modulus& m) {
  return Residue{m.pow(base.value, exponent)};
}

Residue inv_mod(Residue a, const Modulus& m) {
  return Residue{m.inv(a.value)};
}

std::vector<Residue> batch_inv_mod(std::span<const Residue> values,
                                   const Modulus& m) {
  const size_t k = values.size();
  std::vector<Residue> out(k);
  if (k == 0) return out;

  std::vector<u128> prefix(k + 1);
  prefix[0] = 1;
  for (size_t i = 0; i < k; ++i)
    prefix[i + 1] = m.mul(prefix[i], values[i].value);

  u128 inv_run;
  try {
    inv_run = m.inv(prefix[k]);
  } catch (const Error&) {
    for (size_t i = 0; i < k; ++i)
      if (gcd_u128(values[i].value, m.value()) != 1)
        raise(Errc::NotInvertible,
              "element at index " + std::to_string(i) + " is not invertible");
    throw;  // unreachable for a consistent modulus
  }
  for (size_t i = k; i-- > 0;) {
    out[i] = Residue{m.mul(inv_run, prefix[i])};
    inv_run = m.mul(inv_run, values[i].value);
  }
  return out;
}

}  // namespace hquot
