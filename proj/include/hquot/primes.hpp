#pragma once

#include <vector>

#include "hquot/errors.hpp"
#include "hquot/ints.hpp"

namespace hquot {

// Segmented sieving is supported up to 2^52; this keeps base primes below
// 2^26 and comfortably exceeds any range the quotient methods can accept
// (p^2 < 2^104). Single-candidate testing works for the full 64-bit range.
inline constexpr u64 kSieveCeiling = u64(1) << 52;

struct PrimeSegment {
  u64 lo = 0;  // inclusive
  u64 hi = 0;  // exclusive
  std::vector<u64> primes;
};

u64 isqrt_u64(u64 n);

// Primes <= limit by a simple odd-only sieve; used for base primes.
std::vector<u64> small_primes(u64 limit);

// All primes in [lo, hi), complete and ordered, by segmented sieve of
// Eratosthenes. Throws RangeTooLarge when hi exceeds the sieve ceiling.
PrimeSegment primes_in_range(u64 lo, u64 hi);

// Appends the primes of one window [lo, hi) given base primes covering
// sqrt(hi). The workhorse shared by primes_in_range and the range scanner.
void sieve_window(const std::vector<u64>& base, u64 lo, u64 hi,
                  std::vector<u64>& out);

// Deterministic Miller-Rabin with the first twelve prime bases; exact for
// every n < 2^64.
bool is_prime(u64 n);

}  // namespace hquot
