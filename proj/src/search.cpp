#include "hquot/search.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace hquot {

u64 fnv1a64(std::string_view s) {
  u64 h = 0xcbf29ce484222325ull;
  for (const char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

u64 spec_digest(unsigned divisor, MethodKind method, u64 from, u64 to) {
  std::ostringstream os;
  os << "N:" << divisor << ";method:" << method_name(method)
     << ";from:" << from << ";to:" << to;
  return fnv1a64(os.str());
}

namespace {

void validate_spec(const SearchSpec& spec) {
  if (spec.divisor < 2 || spec.divisor > 46)
    raise(Errc::InvalidArgument, "divisor N must lie in [2, 46]");
  if (spec.method != MethodKind::DirectSum && spec.divisor != 6)
    raise(Errc::MethodUnavailable,
          std::string(method_name(spec.method)) + " applies only to N = 6");
  if (spec.from >= spec.to)
    raise(Errc::InvalidArgument, "empty range: from must be < to");
  if (spec.to > kSieveCeiling)
    raise(Errc::CeilingExceeded, "scan limit exceeds the 2^52 ceiling");
  if (spec.method != MethodKind::DirectSum && spec.to > kFqPrimeCeiling)
    raise(Errc::CeilingExceeded, "quotient methods need to^2 < 2^104");
  if (spec.shard_count < 1)
    raise(Errc::InvalidArgument, "shard_count must be positive");
  if (spec.segment_width < 1)
    raise(Errc::InvalidArgument, "segment_width must be positive");
}

bool residue_is_zero(u64 p, unsigned divisor, MethodKind method) {
  return is_zero(HarmonicInstance(p, divisor), method);
}

// Every zero is confirmed through a second, independent route before it is
// recorded: DirectSum while the sum is feasible, otherwise the quotient
// method the primary did not use. For N != 6 only DirectSum exists, so the
// per-term-inversion mode serves as the independent route.
void cross_verify(u64 p, unsigned divisor, MethodKind primary) {
  const HarmonicInstance inst(p, divisor);
  bool ok = false;
  if (primary == MethodKind::DirectSum) {
    if (divisor == 6 && p > 5) {
      ok = is_zero(inst, MethodKind::LehmerFQ);
    } else {
      ok = harmonic_residue_direct(inst, {.per_term = true}).value == 0;
    }
  } else if (inst.terms <= kDirectFeasibleTerms * 10ull) {
    ok = is_zero(inst, MethodKind::DirectSum);
  } else {
    const MethodKind alt = primary == MethodKind::Base432FQ
                               ? MethodKind::LehmerFQ
                               : MethodKind::Base432FQ;
    ok = is_zero(inst, alt);
  }
  if (!ok)
    throw std::logic_error("zero at p=" + std::to_string(p) +
                           " failed independent re-verification");
}

struct ResumeState {
  u64 start;
  std::vector<u64> seeded;
};

ResumeState load_resume_state(const SearchSpec& spec, u64 start) {
  ResumeState st{start, {}};
  if (!spec.checkpoint_path || !fs::exists(*spec.checkpoint_path)) return st;
  const Checkpoint cp = read_checkpoint(*spec.checkpoint_path);
  const u64 digest =
      spec_digest(spec.divisor, spec.method, spec.from, spec.to);
  if (cp.digest != digest)
    raise(Errc::CheckpointMismatch,
          "checkpoint was written for a different search");
  if (cp.next < spec.from || cp.next > spec.to)
    raise(Errc::CheckpointCorrupt, "next lies outside the search range");
  for (const u64 z : cp.zeros)
    if (z < spec.from)
      raise(Errc::CheckpointCorrupt, "zero below the search range");
  st.seeded = cp.zeros;
  st.start = std::max(st.start, cp.next);
  return st;
}

}  // namespace

SearchOutcome run_search(const SearchSpec& spec, const ZeroSink& sink) {
  validate_spec(spec);
  const u64 digest =
      spec_digest(spec.divisor, spec.method, spec.from, spec.to);
  const u64 scan_floor = std::max(spec.from, u64(spec.divisor) + 1);
  const ResumeState st = load_resume_state(spec, scan_floor);

  SearchOutcome out;
  std::vector<u64> zero_ps;  // running list for checkpoint payloads
  const auto record_zero = [&](u64 p) {
    cross_verify(p, spec.divisor, spec.method);
    const ZeroRecord rec{p, spec.divisor, spec.method};
    out.zeros.push_back(rec);
    zero_ps.push_back(p);
    if (sink) sink(rec);
  };
  for (const u64 z : st.seeded) record_zero(z);

  const u64 start = st.start;
  if (start < spec.to) {
    const std::vector<u64> base = small_primes(isqrt_u64(spec.to - 1));
    const u64 width = spec.segment_width;
    const u64 nseg = (spec.to - start + width - 1) / width;

    std::atomic<bool> failed{false};
    std::exception_ptr first_error = nullptr;

#pragma omp parallel for ordered schedule(dynamic, 1) \
    num_threads(static_cast<int>(spec.shard_count))
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(nseg); ++i) {
      std::vector<u64> primes, zeros;
      if (!failed.load(std::memory_order_relaxed)) {
        try {
          const u64 s0 = start + static_cast<u64>(i) * width;
          const u64 s1 = std::min(s0 + width, spec.to);
          sieve_window(base, s0, s1, primes);
          for (const u64 p : primes)
            if (residue_is_zero(p, spec.divisor, spec.method))
              zeros.push_back(p);
        } catch (...) {
#pragma omp critical(hquot_search_error)
          {
            if (!first_error) first_error = std::current_exception();
          }
          failed.store(true, std::memory_order_relaxed);
        }
      }
#pragma omp ordered
      {
        if (!failed.load(std::memory_order_relaxed)) {
          try {
            for (const u64 p : zeros) record_zero(p);
            out.primes_scanned += primes.size();
            if (spec.checkpoint_path) {
              const u64 s1 =
                  std::min(start + (static_cast<u64>(i) + 1) * width, spec.to);
              write_checkpoint(Checkpoint{digest, s1, zero_ps},
                               *spec.checkpoint_path);
            }
          } catch (...) {
#pragma omp critical(hquot_search_error)
            {
              if (!first_error) first_error = std::current_exception();
            }
            failed.store(true, std::memory_order_relaxed);
          }
        }
      }
    }
    if (first_error) std::rethrow_exception(first_error);
  } else if (spec.checkpoint_path) {
    write_checkpoint(Checkpoint{digest, spec.to, zero_ps},
                     *spec.checkpoint_path);
  }
  return out;
}

SearchOutcome resume(const SearchSpec& spec, const ZeroSink& sink) {
  if (!spec.checkpoint_path)
    raise(Errc::InvalidArgument, "resume needs a checkpoint path");
  if (!fs::exists(*spec.checkpoint_path))
    raise(Errc::IoFailure,
          "checkpoint file not found: " + spec.checkpoint_path->string());
  return run_search(spec, sink);
}

SearchOutcome run_search_reference(const SearchSpec& spec) {
  validate_spec(spec);
  const u64 start = std::max(spec.from, u64(spec.divisor) + 1);
  SearchOutcome out;
  if (start >= spec.to) return out;
  const std::vector<u64> base = small_primes(isqrt_u64(spec.to - 1));
  std::vector<u64> primes;
  for (u64 s0 = start; s0 < spec.to; s0 += spec.segment_width) {
    const u64 s1 = std::min(s0 + spec.segment_width, spec.to);
    sieve_window(base, s0, s1, primes);
    for (const u64 p : primes) {
      if (residue_is_zero(p, spec.divisor, spec.method))
        out.zeros.push_back(ZeroRecord{p, spec.divisor, spec.method});
      ++out.primes_scanned;
    }
    if (s1 == spec.to) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Checkpoint file format (exact, line oriented):
//   hquot-checkpoint v1
//   digest=<16 lowercase hex chars>
//   next=<decimal>
//   zeros=<comma-separated decimals, empty allowed>
// with a required trailing newline.

namespace {

constexpr std::string_view kMagic = "hquot-checkpoint v1";

u64 parse_decimal_strict(std::string_view s) {
  if (s.empty() || (s.size() > 1 && s[0] == '0'))
    raise(Errc::CheckpointCorrupt, "malformed decimal field");
  u64 v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    raise(Errc::CheckpointCorrupt, "malformed decimal field");
  return v;
}

std::string digest_hex(u64 digest) {
  static const char* hexdigits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<size_t>(i)] = hexdigits[digest & 0xf];
    digest >>= 4;
  }
  return s;
}

u64 parse_digest_hex(std::string_view s) {
  if (s.size() != 16) raise(Errc::CheckpointCorrupt, "digest must be 16 hex");
  u64 v = 0;
  for (const char c : s) {
    v <<= 4;
    if (c >= '0' && c <= '9') v |= static_cast<u64>(c - '0');
    else if (c >= 'a' && c <= 'f') v |= static_cast<u64>(c - 'a' + 10);
    else raise(Errc::CheckpointCorrupt, "digest must be lowercase hex");
  }
  return v;
}

}  // namespace

void write_checkpoint(const Checkpoint& cp, const fs::path& path) {
  for (size_t i = 0; i < cp.zeros.size(); ++i) {
    if (cp.zeros[i] >= cp.next)
      raise(Errc::CheckpointCorrupt, "zero not below next");
    if (i > 0 && cp.zeros[i] <= cp.zeros[i - 1])
      raise(Errc::CheckpointCorrupt, "zeros not strictly increasing");
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) raise(Errc::IoFailure, "cannot open " + tmp.string());
    os << kMagic << '\n';
    os << "digest=" << digest_hex(cp.digest) << '\n';
    os << "next=" << cp.next << '\n';
    os << "zeros=";
    for (size_t i = 0; i < cp.zeros.size(); ++i) {
      if (i > 0) os << ',';
      os << cp.zeros[i];
    }
    os << '\n';
    os.flush();
    if (!os) raise(Errc::IoFailure, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) raise(Errc::IoFailure, "rename failed: " + ec.message());
}

Checkpoint read_checkpoint(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) raise(Errc::IoFailure, "cannot open " + path.string());
  std::string text((std::istreambuf_iterator<char>(is)),
                   std::istreambuf_iterator<char>());
  if (text.empty() || text.back() != '\n')
    raise(Errc::CheckpointCorrupt, "missing trailing newline");
  text.pop_back();

  std::vector<std::string_view> lines;
  std::string_view rest = text;
  while (true) {
    const size_t nl = rest.find('\n');
    if (nl == std::string_view::npos) {
      lines.push_back(rest);
      break;
    }
    lines.push_back(rest.substr(0, nl));
    rest.remove_prefix(nl + 1);
  }
  if (lines.size() != 4) raise(Errc::CheckpointCorrupt, "expected 4 lines");
  if (lines[0] != kMagic) raise(Errc::CheckpointCorrupt, "bad magic line");
  if (!lines[1].starts_with("digest="))
    raise(Errc::CheckpointCorrupt, "missing digest line");
  if (!lines[2].starts_with("next="))
    raise(Errc::CheckpointCorrupt, "missing next line");
  if (!lines[3].starts_with("zeros="))
    raise(Errc::CheckpointCorrupt, "missing zeros line");

  Checkpoint cp;
  cp.digest = parse_digest_hex(lines[1].substr(7));
  cp.next = parse_decimal_strict(lines[2].substr(5));
  std::string_view zs = lines[3].substr(6);
  while (!zs.empty()) {
    const size_t comma = zs.find(',');
    const std::string_view field =
        comma == std::string_view::npos ? zs : zs.substr(0, comma);
    const u64 z = parse_decimal_strict(field);
    if (!cp.zeros.empty() && z <= cp.zeros.back())
      raise(Errc::CheckpointCorrupt, "zeros not strictly increasing");
    if (z >= cp.next) raise(Errc::CheckpointCorrupt, "zero not below next");
    cp.zeros.push_back(z);
    if (comma == std::string_view::npos) break;
    zs.remove_prefix(comma + 1);
    if (zs.empty()) raise(Errc::CheckpointCorrupt, "trailing comma");
  }
  return cp;
}

// ---------------------------------------------------------------------------

bool VerifyReport::all_zero() const {
  for (const auto& r : residues)
    if (r.residue != 0) return false;
  return !residues.empty();
}

std::vector<MethodKind> feasible_methods(u64 p, unsigned divisor) {
  std::vector<MethodKind> ms;
  if (divisor != 0 && p / divisor <= kDirectFeasibleTerms)
    ms.push_back(MethodKind::DirectSum);
  if (divisor == 6 && p > 5 && p < kFqPrimeCeiling) {
    ms.push_back(MethodKind::LehmerFQ);
    ms.push_back(MethodKind::Base432FQ);
  }
  return ms;
}

VerifyReport verify_single(u64 p, unsigned divisor,
                           std::span<const MethodKind> methods) {
  if (!is_prime(p))
    raise(Errc::NotPrime, std::to_string(p) + " is not prime");
  const HarmonicInstance inst(p, divisor);  // VacuousSum when p <= N
  if (methods.empty())
    raise(Errc::MethodUnavailable, "no feasible method for this candidate");
  VerifyReport rep{p, divisor, {}};
  for (const MethodKind m : methods)
    rep.residues.push_back(MethodResidue{m, residue(inst, m).value});
  return rep;
}

}  // namespace hquot
