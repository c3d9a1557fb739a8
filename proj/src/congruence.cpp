#include "hquot/congruence.hpp"

#include <algorithm>

#include "hquot/montgomery.hpp"

namespace hquot {

const char* method_name(MethodKind m) {
  switch (m) {
    case MethodKind::DirectSum: return "DirectSum";
    case MethodKind::LehmerFQ: return "LehmerFQ";
    case MethodKind::Base432FQ: return "Base432FQ";
  }
  return "?";
}

const char* method_cli_name(MethodKind m) {
  switch (m) {
    case MethodKind::DirectSum: return "direct";
    case MethodKind::LehmerFQ: return "lehmer";
    case MethodKind::Base432FQ: return "fq432";
  }
  return "?";
}

std::optional<MethodKind> method_from_cli_name(std::string_view name) {
  if (name == "direct") return MethodKind::DirectSum;
  if (name == "lehmer") return MethodKind::LehmerFQ;
  if (name == "fq432") return MethodKind::Base432FQ;
  return std::nullopt;
}

HarmonicInstance::HarmonicInstance(u64 p, unsigned divisor)
    : p(p), divisor(divisor), terms(divisor ? p / divisor : 0) {
  if (divisor < 2 || divisor > 46)
    raise(Errc::InvalidArgument, "divisor N must lie in [2, 46]");
  if (p <= divisor)
    raise(Errc::VacuousSum,
          "p <= N leaves an empty sum (p=" + std::to_string(p) +
              ", N=" + std::to_string(divisor) + ")");
}

namespace {

u64 xgcd_inverse_u64(u64 a, u64 p) {
  i128 r0 = static_cast<i128>(p), r1 = static_cast<i128>(a);
  i128 t0 = 0, t1 = 1;
  while (r1 != 0) {
    const i128 q = r0 / r1;
    r0 -= q * r1;
    std::swap(r0, r1);
    t0 -= q * t1;
    std::swap(t0, t1);
  }
  if (t0 < 0) t0 += static_cast<i128>(p);
  return static_cast<u64>(t0);
}

// Batched kernel: Montgomery-domain prefix products, one inversion per
// block, then a backward sweep recovering every term inverse.
u64 harmonic_batched(u64 p, u64 terms, u32 batch_size) {
  const Montgomery64 mg(p);
  const u64 one = mg.one();
  const u64 block = std::max<u32>(1, batch_size);
  std::vector<u64> prefix(block + 1);

  u64 sum = 0;
  u64 jm = 0;  // Montgomery form of the current index j
  u64 done = 0;
  while (done < terms) {
    const u64 cnt = std::min<u64>(block, terms - done);
    prefix[0] = one;
    for (u64 i = 1; i <= cnt; ++i) {
      jm = mg.add(jm, one);
      prefix[i] = mg.mul(prefix[i - 1], jm);
    }
    u64 inv_run =
        mg.to_mont(xgcd_inverse_u64(mg.from_mont(prefix[cnt]), p));
    u64 jback = jm;
    for (u64 i = cnt; i >= 1; --i) {
      sum = mg.add(sum, mg.mul(inv_run, prefix[i - 1]));
      inv_run = mg.mul(inv_run, jback);
      jback = mg.sub(jback, one);
    }
    done += cnt;
  }
  return mg.from_mont(sum);
}

// Reference mode: one extended gcd per term, plain arithmetic throughout.
u64 harmonic_per_term(u64 p, u64 terms) {
  u64 sum = 0;
  for (u64 j = 1; j <= terms; ++j) {
    const u64 inv = xgcd_inverse_u64(j, p);
    sum += inv;
    if (sum >= p || sum < inv) sum -= p;  // handles the wrap at 2^64
  }
  return sum % p;
}

// base^(p-1) mod p^2 with the width-appropriate Montgomery context.
u128 fermat_power(u64 p, u128 base_reduced) {
  const u128 p2 = u128(p) * p;
  if (p == 2) return base_reduced;  // exponent is 1
  if ((p2 >> 64) == 0) {
    const Montgomery64 mg(static_cast<u64>(p2));
    return mg.from_mont(
        mg.pow(mg.to_mont(static_cast<u64>(base_reduced)), p - 1));
  }
  const Montgomery128 mg(p2);
  return mg.from_mont(mg.pow(mg.to_mont(base_reduced), p - 1));
}

}  // namespace

Residue harmonic_residue_direct(const HarmonicInstance& inst,
                                const DirectSumOptions& opts) {
  // p > N >= 2 means p is an odd prime here.
  if (opts.per_term) return Residue{harmonic_per_term(inst.p, inst.terms)};
  return Residue{harmonic_batched(inst.p, inst.terms, opts.batch_size)};
}

Residue fermat_quotient(u64 p, u128 base) {
  if (p < 2) raise(Errc::InvalidPrime, "p must be a prime");
  if (p >= kFqPrimeCeiling)
    raise(Errc::Overflow, "p^2 exceeds the supported modulus range");
  const u128 p2 = u128(p) * p;
  const u128 b = base % p2;
  if (b % p == 0)
    raise(Errc::BaseNotCoprime,
          "base shares the factor " + std::to_string(p) + " with p");
  const u128 t = fermat_power(p, b);
  if ((t - 1) % p != 0)
    raise(Errc::InvalidPrime,
          std::to_string(p) + " fails the Fermat test and cannot be prime");
  return Residue{(t - 1) / p % p};
}

Residue lehmer_residue(u64 p) {
  if (p <= 5)
    raise(Errc::InvalidPrime, "the congruence requires p > 5");
  const u64 q2 = static_cast<u64>(fermat_quotient(p, 2).value);
  const u64 q3 = static_cast<u64>(fermat_quotient(p, 3).value);
  const u64 half = (p + 1) / 2;  // inverse of 2 mod odd p
  const u128 t1 = u128(2) * q2 % p;
  const u128 t2 = u128(3) * half % p * q3 % p;
  return Residue{(u128(2) * p - t1 - t2) % p};
}

Residue scaled_zero_form(u64 p) {
  if (p <= 5)
    raise(Errc::InvalidPrime, "the scaled form requires p > 5");
  const u64 q2 = static_cast<u64>(fermat_quotient(p, 2).value);
  const u64 q3 = static_cast<u64>(fermat_quotient(p, 3).value);
  return Residue{(u128(4) * q2 + u128(3) * q3) % p};
}

Residue residue_432(u64 p) {
  if (p <= 3)
    raise(Errc::InvalidPrime, "432 = 2^4 * 3^3 shares a factor with p");
  return fermat_quotient(p, kConsolidatedBase);
}

bool eisenstein_product_check(u64 p, u64 a, u64 b) {
  const u128 qa = fermat_quotient(p, a).value;
  const u128 qb = fermat_quotient(p, b).value;
  const u128 qab = fermat_quotient(p, u128(a) * b).value;
  return (qa + qb) % p == qab;
}

bool eisenstein_power_check(u64 p, u64 base, unsigned k) {
  if (k == 0) raise(Errc::InvalidArgument, "exponent k must be positive");
  if (base == 0) raise(Errc::BaseNotCoprime, "base 0 shares every factor");
  u128 bk = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (bk > ~u128(0) / base)
      raise(Errc::Overflow, "base^k exceeds the supported range");
    bk *= base;
  }
  const u128 qb = fermat_quotient(p, base).value;
  const u128 qbk = fermat_quotient(p, bk).value;
  return u128(k) * qb % p == qbk;
}

Residue residue(const HarmonicInstance& inst, MethodKind method) {
  switch (method) {
    case MethodKind::DirectSum:
      return harmonic_residue_direct(inst);
    case MethodKind::LehmerFQ:
    case MethodKind::Base432FQ:
      if (inst.divisor != 6)
        raise(Errc::MethodUnavailable,
              std::string(method_name(method)) + " applies only to N = 6");
      if (inst.p <= 5)
        raise(Errc::InvalidPrime, "quotient methods require p > 5");
      return method == MethodKind::LehmerFQ ? lehmer_residue(inst.p)
                                            : residue_432(inst.p);
  }
  raise(Errc::InvalidArgument, "unknown method");
}

bool is_zero(const HarmonicInstance& inst, MethodKind method) {
  return residue(inst, method).value == 0;
}

}  // namespace hquot
