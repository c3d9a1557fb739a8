#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hquot/congruence.hpp"
#include "hquot/primes.hpp"

namespace hquot {

// A resumable description of one range scan. Scanning covers every prime in
// [max(from, N+1), to): exactly the primes p > N, which for N = 6 means the
// scan starts at 7.
struct SearchSpec {
  unsigned divisor = 6;
  MethodKind method = MethodKind::Base432FQ;
  u64 from = 7;
  u64 to = 0;  // exclusive
  unsigned shard_count = 1;
  std::optional<std::filesystem::path> checkpoint_path;
  u64 segment_width = u64(1) << 20;
};

struct ZeroRecord {
  u64 p = 0;
  unsigned divisor = 0;
  MethodKind method = MethodKind::Base432FQ;
  // residue is identically zero; every record is re-verified by an
  // independent method before it is emitted
  friend bool operator==(const ZeroRecord&, const ZeroRecord&) = default;
};

struct Checkpoint {
  u64 digest = 0;  // spec_digest of (N, method, from, to)
  u64 next = 0;    // smallest unscanned integer
  std::vector<u64> zeros;
  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

struct SearchOutcome {
  std::vector<ZeroRecord> zeros;
  u64 primes_scanned = 0;
};

// Invoked for each zero in increasing order of p, on the committing thread.
using ZeroSink = std::function<void(const ZeroRecord&)>;

u64 fnv1a64(std::string_view s);
u64 spec_digest(unsigned divisor, MethodKind method, u64 from, u64 to);

// Scans [max(from, N+1), to) and returns all zeros in increasing order.
// Segments are processed by shard_count workers and committed strictly in
// range order, so the result (and any streamed output) is identical for any
// shard count. When spec.checkpoint_path names an existing file the scan
// resumes from it; otherwise the file is (re)written after every committed
// segment.
SearchOutcome run_search(const SearchSpec& spec, const ZeroSink& sink = {});

// Same as run_search but the checkpoint file must already exist.
SearchOutcome resume(const SearchSpec& spec, const ZeroSink& sink = {});

// Plain single-threaded scan with none of the coordination machinery.
// Kept as the reference the parallel path is tested against.
SearchOutcome run_search_reference(const SearchSpec& spec);

// Text checkpoint, atomic on write (temp file + rename). Any format
// deviation on read raises CheckpointCorrupt.
void write_checkpoint(const Checkpoint& cp, const std::filesystem::path& path);
Checkpoint read_checkpoint(const std::filesystem::path& path);

struct MethodResidue {
  MethodKind method;
  u128 residue;
};

struct VerifyReport {
  u64 p = 0;
  unsigned divisor = 0;
  std::vector<MethodResidue> residues;
  bool all_zero() const;
};

// Methods worth running by default for a single candidate: DirectSum only
// while floor(p/N) stays below the feasibility cutoff, the quotient methods
// whenever N = 6 and p > 5.
std::vector<MethodKind> feasible_methods(u64 p, unsigned divisor);

// Computes the residue of one candidate under each requested method.
VerifyReport verify_single(u64 p, unsigned divisor,
                           std::span<const MethodKind> methods);

}  // namespace hquot
