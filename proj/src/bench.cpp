#include "hquot/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hquot {

double predicted_cost(MethodKind method, double n) {
  if (!(n > std::exp(1.0)))
    raise(Errc::InvalidArgument, "cost model needs n > e");
  const double ln = std::log(n);
  if (method == MethodKind::DirectSum) return 0.5 * n * n * (ln - 0.5);
  return n * (ln - 1.0);
}

namespace {

double timed_scan(MethodKind method, u64 limit, const BenchOptions& opts,
                  SearchOutcome& out) {
  SearchSpec spec;
  spec.divisor = opts.divisor;
  spec.method = method;
  spec.from = 7;
  spec.to = limit;
  spec.shard_count = opts.shard_count;
  const auto t0 = std::chrono::steady_clock::now();
  out = run_search(spec);
  const std::chrono::duration<double> dt =
      std::chrono::steady_clock::now() - t0;
  return std::max(dt.count(), 1e-9);
}

}  // namespace

BenchRow time_method(MethodKind method, u64 limit, const BenchOptions& opts) {
  BenchRow row;
  row.limit = limit;
  row.method = method;
  row.predicted_cost = predicted_cost(method, static_cast<double>(limit));

  if (limit > opts.calibration_limit) {
    SearchOutcome calib;
    const double calib_wall =
        timed_scan(method, opts.calibration_limit, opts, calib);
    const double calib_cost =
        predicted_cost(method, static_cast<double>(opts.calibration_limit));
    const double estimate = calib_wall * (row.predicted_cost / calib_cost);
    if (estimate > opts.budget_seconds) {
      row.status = RowStatus::Skipped;
      row.skip_reason = "BudgetExceeded";
      return row;
    }
  }

  SearchOutcome out;
  row.wall_seconds = timed_scan(method, limit, opts, out);
  row.primes_scanned = out.primes_scanned;
  for (const ZeroRecord& z : out.zeros) row.zeros.push_back(z.p);
  return row;
}

BenchReport compare_methods(std::span<const u64> limits,
                            std::span<const MethodKind> methods,
                            const BenchOptions& opts) {
  if (limits.empty()) raise(Errc::InvalidArgument, "no limits given");
  BenchReport report;
  report.environment = bench_environment(opts);
  for (const u64 limit : limits)
    for (const MethodKind m : methods)
      report.rows.push_back(time_method(m, limit, opts));
  return report;
}

void write_csv(const BenchReport& report, std::ostream& os) {
  os << "limit,method,wall_seconds,primes_scanned,predicted_cost,status\n";
  for (const BenchRow& r : report.rows) {
    char wall[32];
    std::snprintf(wall, sizeof wall, "%.6f", r.wall_seconds);
    char cost[32];
    std::snprintf(cost, sizeof cost, "%.6g", r.predicted_cost);
    os << r.limit << ',' << method_name(r.method) << ',' << wall << ','
       << r.primes_scanned << ',' << cost << ','
       << (r.status == RowStatus::Ok ? "ok" : "skipped") << '\n';
  }
}

std::string bench_environment(const BenchOptions& opts) {
  std::ostringstream os;
  os << "compiler " << __VERSION__ << ", " << opts.shard_count
     << " worker(s)";
#ifdef _OPENMP
  os << ", OpenMP " << _OPENMP;
#endif
  return os.str();
}

}  // namespace hquot
