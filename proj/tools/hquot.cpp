// hquot command-line front end: search / verify / residue / bench.
//
// Exit codes: 0 completed (or all residues zero for verify), 1 verify found
// a nonzero residue, 2 usage or input error, 3 checkpoint error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hquot/bench.hpp"
#include "hquot/congruence.hpp"
#include "hquot/search.hpp"

namespace {

using namespace hquot;

constexpr int kExitOk = 0;
constexpr int kExitNonzero = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCheckpoint = 3;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::CheckpointMismatch:
    case Errc::CheckpointCorrupt:
    case Errc::IoFailure:
      return kExitCheckpoint;
    default:
      return kExitUsage;
  }
}

struct OutStream {
  std::ostream* os = &std::cout;
  std::ofstream file;
  bool open(const std::string& target) {
    if (target == "-") return true;
    file.open(target, std::ios::binary | std::ios::trunc);
    if (!file) return false;
    os = &file;
    return true;
  }
};

MethodKind parse_method(const std::string& name) {
  const auto m = method_from_cli_name(name);
  if (!m)
    raise(Errc::InvalidArgument,
          "unknown method '" + name + "' (expected direct|lehmer|fq432)");
  return *m;
}

std::vector<MethodKind> parse_methods(const std::vector<std::string>& names) {
  std::vector<MethodKind> ms;
  for (const auto& n : names) ms.push_back(parse_method(n));
  return ms;
}

struct SearchArgs {
  unsigned divisor = 6;
  std::string method = "fq432";
  u64 from = 7;
  u64 to = 0;
  unsigned shards = 1;
  std::string checkpoint;
  std::string out = "-";
};

int cmd_search(const SearchArgs& a) {
  const MethodKind method = parse_method(a.method);
  if (a.divisor == 6 && a.from < 7)
    raise(Errc::InvalidArgument, "scans with N = 6 start at 7 or above");
  SearchSpec spec;
  spec.divisor = a.divisor;
  spec.method = method;
  spec.from = a.from;
  spec.to = a.to;
  spec.shard_count = a.shards;
  if (!a.checkpoint.empty()) spec.checkpoint_path = a.checkpoint;

  OutStream out;
  if (!out.open(a.out)) {
    std::cerr << "error: cannot open output file " << a.out << '\n';
    return kExitUsage;
  }
  run_search(spec, [&](const ZeroRecord& z) {
    *out.os << "p=" << z.p << " N=" << z.divisor
            << " method=" << method_name(z.method) << " residue=0\n";
    out.os->flush();
  });
  return kExitOk;
}

struct VerifyArgs {
  u64 p = 0;
  unsigned divisor = 6;
  std::vector<std::string> methods;
};

int cmd_verify(const VerifyArgs& a) {
  std::vector<MethodKind> ms = a.methods.empty()
                                   ? feasible_methods(a.p, a.divisor)
                                   : parse_methods(a.methods);
  const VerifyReport rep = verify_single(a.p, a.divisor, ms);
  for (const auto& r : rep.residues)
    std::cout << "method=" << method_name(r.method)
              << " residue=" << to_string(r.residue) << '\n';
  return rep.all_zero() ? kExitOk : kExitNonzero;
}

struct ResidueArgs {
  u64 p = 0;
  unsigned divisor = 6;
  std::string method = "fq432";
};

int cmd_residue(const ResidueArgs& a) {
  if (!is_prime(a.p))
    raise(Errc::NotPrime, std::to_string(a.p) + " is not prime");
  const HarmonicInstance inst(a.p, a.divisor);
  std::cout << to_string(residue(inst, parse_method(a.method)).value) << '\n';
  return kExitOk;
}

struct BenchArgs {
  std::vector<u64> limits;
  std::vector<std::string> methods = {"direct", "fq432"};
  double budget_seconds = 300.0;
  unsigned shards = 1;
  std::string out = "-";
};

int cmd_bench(const BenchArgs& a) {
  OutStream out;
  if (!out.open(a.out)) {
    std::cerr << "error: cannot open output file " << a.out << '\n';
    return kExitUsage;
  }
  BenchOptions opts;
  opts.budget_seconds = a.budget_seconds;
  opts.shard_count = a.shards;
  const std::vector<MethodKind> ms = parse_methods(a.methods);
  const BenchReport report = compare_methods(a.limits, ms, opts);
  write_csv(report, *out.os);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hquot: find primes p with H_{floor(p/N)} == 0 (mod p)"};
  app.require_subcommand(1);

  SearchArgs sa;
  CLI::App* search = app.add_subcommand(
      "search", "scan a prime range for zeros of the congruence");
  search->add_option("--n", sa.divisor, "divisor N")->capture_default_str();
  search->add_option("--method", sa.method, "direct|lehmer|fq432")
      ->capture_default_str();
  search->add_option("--from", sa.from, "range start (inclusive)")
      ->capture_default_str();
  search->add_option("--to", sa.to, "range end (exclusive)")->required();
  search->add_option("--shards", sa.shards, "worker count")
      ->capture_default_str();
  search->add_option("--checkpoint", sa.checkpoint,
                     "checkpoint file; resumes when it exists");
  search->add_option("--out", sa.out, "result stream (- for stdout)")
      ->capture_default_str();

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand(
      "verify", "evaluate one candidate under the requested methods");
  verify->add_option("--p", va.p, "candidate prime")->required();
  verify->add_option("--n", va.divisor, "divisor N")->capture_default_str();
  verify->add_option("--methods", va.methods, "comma list; default feasible")
      ->delimiter(',');

  ResidueArgs ra;
  CLI::App* res = app.add_subcommand(
      "residue", "print the residue of one prime under one method");
  res->add_option("--p", ra.p, "prime")->required();
  res->add_option("--n", ra.divisor, "divisor N")->capture_default_str();
  res->add_option("--method", ra.method, "direct|lehmer|fq432")
      ->capture_default_str();

  BenchArgs ba;
  CLI::App* bench = app.add_subcommand(
      "bench", "time methods over scan limits and emit a CSV report");
  bench->add_option("--limits", ba.limits, "comma list of scan limits")
      ->delimiter(',')
      ->required();
  bench->add_option("--methods", ba.methods, "comma list of methods")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--budget-seconds", ba.budget_seconds,
                    "skip runs whose estimate exceeds this")
      ->capture_default_str();
  bench->add_option("--shards", ba.shards, "worker count (default serial)")
      ->capture_default_str();
  bench->add_option("--out", ba.out, "report target (- for stdout)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(search)) return cmd_search(sa);
    if (app.got_subcommand(verify)) return cmd_verify(va);
    if (app.got_subcommand(res)) return cmd_residue(ra);
    if (app.got_subcommand(bench)) return cmd_bench(ba);
  } catch (const hquot::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
