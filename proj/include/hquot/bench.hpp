#pragma once

#include <iosfwd>
#include <string>

#include "hquot/search.hpp"

namespace hquot {

enum class RowStatus { Ok, Skipped };

struct BenchRow {
  u64 limit = 0;
  MethodKind method = MethodKind::Base432FQ;
  double wall_seconds = 0.0;
  u64 primes_scanned = 0;
  double predicted_cost = 0.0;
  RowStatus status = RowStatus::Ok;
  std::string skip_reason;
  std::vector<u64> zeros;  // findings of the timing run (also a correctness run)
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::string environment;
};

struct BenchOptions {
  double budget_seconds = 300.0;
  unsigned shard_count = 1;  // timing runs are single-worker by default
  unsigned divisor = 6;
  u64 calibration_limit = 100'000;
};

// Cost model in abstract operation units, used only for ratio comparisons:
// DirectSum ~ n^2/2 (ln n - 1/2), quotient methods ~ n (ln n - 1).
double predicted_cost(MethodKind method, double n);

// Scans [7, limit) with the given method and times it. Runs whose estimated
// duration (extrapolated from a short calibration scan through the cost
// model) exceeds the budget are reported as skipped rather than attempted.
BenchRow time_method(MethodKind method, u64 limit,
                     const BenchOptions& opts = {});

BenchReport compare_methods(std::span<const u64> limits,
                            std::span<const MethodKind> methods,
                            const BenchOptions& opts = {});

// Header: limit,method,wall_seconds,primes_scanned,predicted_cost,status
void write_csv(const BenchReport& report, std::ostream& os);

std::string bench_environment(const BenchOptions& opts);

}  // namespace hquot
