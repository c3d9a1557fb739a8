#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>

#include "hquot/search.hpp"
#include "oracle.hpp"

using namespace hquot;
namespace fs = std::filesystem;

namespace {

struct TempFile {
  fs::path path;
  explicit TempFile(const char* name)
      : path(fs::temp_directory_path() / name) {
    std::error_code ec;
    fs::remove(path, ec);
  }
  ~TempFile() {
    std::error_code ec;
    fs::remove(path, ec);
  }
};

Errc thrown_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::InvalidArgument;
}

SearchSpec base_spec(u64 to) {
  SearchSpec s;
  s.to = to;
  return s;
}

std::vector<u64> zero_ps(const SearchOutcome& out) {
  std::vector<u64> ps;
  for (const auto& z : out.zeros) ps.push_back(z.p);
  return ps;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream os(p, std::ios::binary | std::ios::trunc);
  os << text;
}

}  // namespace

TEST_CASE("digest matches an independent FNV-1a implementation") {
  CHECK(fnv1a64("N:6;method:Base432FQ;from:7;to:600000") ==
        oracle::fnv1a_ref("N:6;method:Base432FQ;from:7;to:600000"));
  CHECK(spec_digest(6, MethodKind::Base432FQ, 7, 600000) ==
        0x3c666399db0de368ull);
}

TEST_CASE("run_search finds 61 and nothing else below 3000") {
  for (const MethodKind m : {MethodKind::DirectSum, MethodKind::LehmerFQ,
                             MethodKind::Base432FQ}) {
    SearchSpec s = base_spec(3000);
    s.method = m;
    CHECK(zero_ps(run_search(s)) == std::vector<u64>{61});
  }
}

TEST_CASE("spec validation") {
  CHECK(thrown_code([] {
          SearchSpec s = base_spec(100);
          s.from = 100;
          run_search(s);
        }) == Errc::InvalidArgument);
  CHECK(thrown_code([] {
          SearchSpec s = base_spec(kSieveCeiling + 1);
          run_search(s);
        }) == Errc::CeilingExceeded);
  CHECK(thrown_code([] {
          SearchSpec s = base_spec(1000);
          s.divisor = 5;  // quotient methods are N = 6 only
          run_search(s);
        }) == Errc::MethodUnavailable);
}

TEST_CASE("scan region starts strictly above N") {
  SearchSpec s = base_spec(100);
  s.divisor = 2;
  s.method = MethodKind::DirectSum;
  s.from = 0;
  // primes p > 2, i.e. starting at 3
  CHECK(run_search(s).primes_scanned == primes_in_range(3, 100).primes.size());
}

TEST_CASE("shard invariance and agreement with the serial reference") {
  SearchSpec s = base_spec(100000);
  s.segment_width = 4096;
  const SearchOutcome ref = run_search_reference(s);
  CHECK(zero_ps(ref) == std::vector<u64>{61});
  for (const unsigned shards : {1u, 2u, 8u}) {
    SearchSpec sp = s;
    sp.shard_count = shards;
    std::vector<u64> streamed;
    const SearchOutcome out =
        run_search(sp, [&](const ZeroRecord& z) { streamed.push_back(z.p); });
    CHECK(out.zeros == ref.zeros);
    CHECK(out.primes_scanned == ref.primes_scanned);
    CHECK(streamed == zero_ps(ref));
  }
}

TEST_CASE("primes_scanned equals the sieve count over the same interval") {
  SearchSpec s = base_spec(200000);
  s.shard_count = 2;
  CHECK(run_search(s).primes_scanned ==
        primes_in_range(7, 200000).primes.size());
}

TEST_CASE("checkpoint round-trip identity") {
  TempFile tf("hquot-test-roundtrip.ckpt");
  const Checkpoint cp{spec_digest(6, MethodKind::Base432FQ, 7, 600000),
                      300000, {61}};
  write_checkpoint(cp, tf.path);
  CHECK(read_checkpoint(tf.path) == cp);
  CHECK_FALSE(fs::exists(tf.path.string() + ".tmp"));
  const Checkpoint empty{123, 7, {}};
  write_checkpoint(empty, tf.path);
  CHECK(read_checkpoint(tf.path) == empty);
}

TEST_CASE("corrupt checkpoints are rejected") {
  TempFile tf("hquot-test-corrupt.ckpt");
  const std::string good =
      "hquot-checkpoint v1\n"
      "digest=3c666399db0de368\n"
      "next=300000\n"
      "zeros=61\n";
  write_text(tf.path, good);
  CHECK_NOTHROW(read_checkpoint(tf.path));

  const auto expect_corrupt = [&](const std::string& text) {
    write_text(tf.path, text);
    CHECK(thrown_code([&] { read_checkpoint(tf.path); }) ==
          Errc::CheckpointCorrupt);
  };
  expect_corrupt(good.substr(0, good.size() - 1));   // truncated newline
  expect_corrupt(good.substr(0, 25));                // truncated file
  expect_corrupt("hquot-checkpoint v2\ndigest=3c666399db0de368\n"
                 "next=300000\nzeros=61\n");
  expect_corrupt("hquot-checkpoint v1\ndigest=3C666399DB0DE368\n"
                 "next=300000\nzeros=61\n");          // uppercase hex
  expect_corrupt("hquot-checkpoint v1\ndigest=3c666399db0de368\n"
                 "next=300000\nzeros=62,61\n");       // not increasing
  expect_corrupt("hquot-checkpoint v1\ndigest=3c666399db0de368\n"
                 "next=300000\nzeros=61,\n");         // trailing comma
  expect_corrupt("hquot-checkpoint v1\ndigest=3c666399db0de368\n"
                 "next=60\nzeros=61\n");              // zero >= next
  expect_corrupt(good + "extra\n");
  CHECK(thrown_code([] { read_checkpoint("no-such-file.ckpt"); }) ==
        Errc::IoFailure);
}

TEST_CASE("resume requires a matching spec digest") {
  TempFile tf("hquot-test-mismatch.ckpt");
  write_checkpoint(
      Checkpoint{spec_digest(5, MethodKind::DirectSum, 7, 3000), 100, {}},
      tf.path);
  SearchSpec s = base_spec(3000);
  s.checkpoint_path = tf.path;
  CHECK(thrown_code([&] { run_search(s); }) == Errc::CheckpointMismatch);
  CHECK(thrown_code([&] { resume(s); }) == Errc::CheckpointMismatch);
}

TEST_CASE("resume continues from next and reproduces the full result") {
  for (const u64 split : {50ull, 500ull, 2000ull}) {
    TempFile tf("hquot-test-resume.ckpt");
    SearchSpec s = base_spec(3000);
    s.checkpoint_path = tf.path;
    std::vector<u64> seeded;
    if (split > 61) seeded.push_back(61);
    write_checkpoint(Checkpoint{spec_digest(6, s.method, s.from, s.to), split,
                                seeded},
                     tf.path);
    const SearchOutcome out = resume(s);
    CHECK(zero_ps(out) == std::vector<u64>{61});
    // after completion the checkpoint covers the whole range
    const Checkpoint done = read_checkpoint(tf.path);
    CHECK(done.next == 3000);
    CHECK(done.zeros == std::vector<u64>{61});
  }
}

TEST_CASE("resume without a file is an IoFailure") {
  SearchSpec s = base_spec(3000);
  s.checkpoint_path = "definitely-missing.ckpt";
  CHECK(thrown_code([&] { resume(s); }) == Errc::IoFailure);
}

TEST_CASE("fresh run writes checkpoints as segments complete") {
  TempFile tf("hquot-test-fresh.ckpt");
  SearchSpec s = base_spec(100000);
  s.segment_width = 10000;
  s.shard_count = 2;
  s.checkpoint_path = tf.path;
  run_search(s);
  const Checkpoint done = read_checkpoint(tf.path);
  CHECK(done.digest == spec_digest(6, s.method, 7, 100000));
  CHECK(done.next == 100000);
  CHECK(done.zeros == std::vector<u64>{61});
}

TEST_CASE("verify_single reports per-method residues") {
  const std::vector<MethodKind> all{MethodKind::DirectSum,
                                    MethodKind::LehmerFQ,
                                    MethodKind::Base432FQ};
  const VerifyReport r61 = verify_single(61, 6, all);
  CHECK(r61.all_zero());
  REQUIRE(r61.residues.size() == 3);

  const std::vector<MethodKind> two{MethodKind::DirectSum,
                                    MethodKind::LehmerFQ};
  const VerifyReport r67 = verify_single(67, 6, two);
  CHECK_FALSE(r67.all_zero());
  CHECK(r67.residues[0].residue == r67.residues[1].residue);
  CHECK(r67.residues[0].residue == 58);  // H_11 mod 67, precomputed

  CHECK(thrown_code([&] { verify_single(60, 6, all); }) == Errc::NotPrime);
  CHECK(thrown_code([&] { verify_single(5, 6, all); }) == Errc::VacuousSum);
}

TEST_CASE("feasible method selection") {
  const auto ms = feasible_methods(7308036881ull, 6);
  CHECK(ms == std::vector<MethodKind>{MethodKind::LehmerFQ,
                                      MethodKind::Base432FQ});
  const auto small = feasible_methods(67, 6);
  CHECK(small.size() == 3);
  CHECK(feasible_methods(67, 5) ==
        std::vector<MethodKind>{MethodKind::DirectSum});
}
