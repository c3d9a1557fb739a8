#pragma once

#include <optional>
#include <string_view>

#include "hquot/modmath.hpp"

namespace hquot {

// Evaluation strategies for H_{floor(p/N)} mod p.
//
// DirectSum evaluates the sum of inverses term by term (batched). LehmerFQ
// uses the congruence H_{floor(p/6)} == -2*q_p(2) - (3/2)*q_p(3) (mod p),
// with q_p(b) = (b^(p-1) - 1)/p the Fermat quotient. Base432FQ consolidates
// the two quotients into the single base 432 = 2^4 * 3^3 via Eisenstein's
// product and power rules; its value is the -2-scaled form, so it shares
// exactly the zero set of the other two.
enum class MethodKind { DirectSum, LehmerFQ, Base432FQ };

const char* method_name(MethodKind m);      // DirectSum | LehmerFQ | Base432FQ
const char* method_cli_name(MethodKind m);  // direct | lehmer | fq432
std::optional<MethodKind> method_from_cli_name(std::string_view name);

// The quotient methods exponentiate mod p^2, which must stay below 2^104.
inline constexpr u64 kFqPrimeCeiling = u64(1) << 52;

// Terms above this make a direct summation unreasonable for interactive
// verification; used when choosing the default method set.
inline constexpr u64 kDirectFeasibleTerms = 100'000'000;

inline constexpr u64 kConsolidatedBase = 432;  // 2^4 * 3^3

struct DirectSumOptions {
  u32 batch_size = 4096;
  bool per_term = false;  // one extended gcd per term (reference mode)
};

// The pair (p, N) with the derived summation bound floor(p/N).
// p must be prime (enforced by callers that accept user input) and must
// exceed N so the sum has at least one term.
struct HarmonicInstance {
  u64 p = 0;
  unsigned divisor = 0;
  u64 terms = 0;
  HarmonicInstance(u64 p, unsigned divisor);
};

// Sum of inverses 1^-1 + ... + terms^-1 mod p, batched inversion by default.
Residue harmonic_residue_direct(const HarmonicInstance& inst,
                                const DirectSumOptions& opts = {});

// q_p(base) = (base^(p-1) - 1)/p mod p. The base is reduced mod p^2 first;
// the quotient mod p depends on the base only through that reduction.
Residue fermat_quotient(u64 p, u128 base);

// -2*q_p(2) - 3*inv(2)*q_p(3) mod p, for p > 5.
Residue lehmer_residue(u64 p);

// 4*q_p(2) + 3*q_p(3) mod p: the -2-scaled form with the same zero set.
Residue scaled_zero_form(u64 p);

// q_p(432) in one exponentiation mod p^2. Valid from p = 5 on (432 is
// coprime to every prime above 3); p = 5 is computable here but below the
// N = 6 validity threshold and excluded from zero reporting.
Residue residue_432(u64 p);

// Eisenstein's rules, exposed as testable identities.
bool eisenstein_product_check(u64 p, u64 a, u64 b);
bool eisenstein_power_check(u64 p, u64 base, unsigned k);

// Dispatch: DirectSum and LehmerFQ return the same residue; Base432FQ
// returns the -2-scaled value with an identical zero set.
Residue residue(const HarmonicInstance& inst, MethodKind method);
bool is_zero(const HarmonicInstance& inst, MethodKind method);

}  // namespace hquot
