#pragma once

#include <span>
#include <vector>

#include "hquot/errors.hpp"
#include "hquot/ints.hpp"

namespace hquot {

// Largest supported modulus is just below 2^104: squares of primes up to
// 2^52 stay representable, and products of two reduced values never exceed
// 208 bits, which the wide reduction path handles exactly.
inline constexpr int kModulusBits = 104;
inline constexpr u128 kModulusCeiling = u128(1) << kModulusBits;

// A value reduced into [0, m). Plain data; the owning Modulus is passed to
// every operation.
struct Residue {
  u128 value = 0;
  friend bool operator==(const Residue&, const Residue&) = default;
};

// Reduction context for a modulus in [2, 2^104). The precomputed constants
// are a pure function of the value, so two Modulus objects with equal value
// behave identically. Immutable after construction, safe to share across
// threads.
class Modulus {
 public:
  explicit Modulus(u128 value);

  u128 value() const { return value_; }
  bool fits_u64() const { return fits64_; }
  bool odd() const { return (value_ & 1) != 0; }

  Residue reduce(u128 x) const { return Residue{x % value_}; }
  Residue zero() const { return Residue{0}; }
  Residue one() const { return Residue{1}; }  // value >= 2 always

  // Raw operations over values already in [0, value).
  u128 add(u128 a, u128 b) const {
    const u128 c = (a >= value_ - b) ? value_ : 0;
    return a + b - c;
  }
  u128 sub(u128 a, u128 b) const {
    const u128 c = (a < b) ? value_ : 0;
    return a - b + c;
  }
  u128 mul(u128 a, u128 b) const;
  u128 pow(u128 base, u128 exponent) const;
  u128 inv(u128 a) const;  // throws NotInvertible when gcd(a, value) != 1

 private:
  u128 value_;
  bool fits64_;
  int bits_ = 0;   // bit length of value_, wide lane only
  u128 mu_ = 0;    // floor(2^(2*bits) / value), wide lane only
};

Residue mul_mod(Residue a, Residue b, const Modulus& m);
Residue pow_mod(Residue base, u128 exponent, const Modulus& m);
Residue inv_mod(Residue a, const Modulus& m);

// Element-wise inverses via the prefix-product trick: one extended gcd plus
// 3(k-1) multiplications for k inputs. Order of the output matches the
// input. Throws NotInvertible naming the offending index if some element
// shares a factor with the modulus.
std::vector<Residue> batch_inv_mod(std::span<const Residue> values,
                                   const Modulus& m);

u128 gcd_u128(u128 a, u128 b);

}  // namespace hquot
