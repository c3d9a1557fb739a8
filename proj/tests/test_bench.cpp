#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "hquot/bench.hpp"

using namespace hquot;

TEST_CASE("predicted_cost formulas") {
  // n^2/2 (ln n - 1/2) and n (ln n - 1) at n = 600000
  CHECK(predicted_cost(MethodKind::DirectSum, 600000) ==
        doctest::Approx(2.3048e12).epsilon(1e-3));
  CHECK(predicted_cost(MethodKind::Base432FQ, 600000) ==
        doctest::Approx(7.3828e6).epsilon(1e-3));
  CHECK(predicted_cost(MethodKind::LehmerFQ, 600000) ==
        predicted_cost(MethodKind::Base432FQ, 600000));
  CHECK_THROWS_AS(predicted_cost(MethodKind::DirectSum, 2.0), Error);
}

TEST_CASE("predicted ratio of DirectSum to the quotient path grows with n") {
  const auto ratio = [](double n) {
    return predicted_cost(MethodKind::DirectSum, n) /
           predicted_cost(MethodKind::Base432FQ, n);
  };
  CHECK(ratio(1e6) > ratio(1e5));
  const auto growth = [](MethodKind m, double n1, double n2) {
    return predicted_cost(m, n2) / predicted_cost(m, n1);
  };
  CHECK(growth(MethodKind::DirectSum, 1e5, 1e6) >
        growth(MethodKind::Base432FQ, 1e5, 1e6));
}

TEST_CASE("time_method runs double as correctness runs") {
  BenchOptions opts;
  opts.calibration_limit = 1000;
  const BenchRow row = time_method(MethodKind::Base432FQ, 600000, opts);
  CHECK(row.status == RowStatus::Ok);
  CHECK(row.wall_seconds > 0.0);
  CHECK(row.zeros == std::vector<u64>{61});
  SearchSpec s;
  s.to = 600000;
  const SearchOutcome plain = run_search(s);
  CHECK(row.primes_scanned == plain.primes_scanned);
  REQUIRE(plain.zeros.size() == 1);
  CHECK(plain.zeros[0].p == 61);
}

TEST_CASE("an infeasible DirectSum limit is skipped, not attempted") {
  const BenchRow row =
      time_method(MethodKind::DirectSum, 1'000'000'000'000ull, {});
  CHECK(row.status == RowStatus::Skipped);
  CHECK(row.skip_reason == "BudgetExceeded");
  CHECK(row.primes_scanned == 0);
}

TEST_CASE("compare_methods emits one row per (limit, method) pair") {
  const std::vector<u64> limits{3000, 9000};
  const std::vector<MethodKind> methods{MethodKind::DirectSum,
                                        MethodKind::Base432FQ};
  BenchOptions opts;
  opts.calibration_limit = 1000;
  const BenchReport rep = compare_methods(limits, methods, opts);
  REQUIRE(rep.rows.size() == 4);
  for (const auto& r : rep.rows) CHECK(r.status == RowStatus::Ok);

  std::ostringstream os;
  write_csv(rep, os);
  const std::string csv = os.str();
  CHECK(csv.starts_with(
      "limit,method,wall_seconds,primes_scanned,predicted_cost,status\n"));
  CHECK(csv.find("3000,DirectSum,") != std::string::npos);
  CHECK(csv.find("9000,Base432FQ,") != std::string::npos);
}

TEST_CASE("measured growth tracks the model within a 2x band") {
  BenchOptions opts;
  opts.budget_seconds = 600.0;
  opts.calibration_limit = 1000;

  // best-of-n to shed scheduler noise
  const auto measured = [&](MethodKind m, u64 limit, int reps) {
    double best = 1e30;
    for (int i = 0; i < reps; ++i) {
      const BenchRow row = time_method(m, limit, opts);
      REQUIRE(row.status == RowStatus::Ok);
      best = std::min(best, row.wall_seconds);
    }
    return best;
  };

  // DirectSum at a pair of limits small enough for a unit test
  {
    const double r_meas = measured(MethodKind::DirectSum, 180000, 1) /
                          measured(MethodKind::DirectSum, 60000, 1);
    const double r_pred = predicted_cost(MethodKind::DirectSum, 180000) /
                          predicted_cost(MethodKind::DirectSum, 60000);
    CHECK(r_meas > r_pred / 2);
    CHECK(r_meas < r_pred * 2);
  }
  // The quotient path needs repetition before timing noise settles
  {
    const double r_meas = measured(MethodKind::Base432FQ, 600000, 3) /
                          measured(MethodKind::Base432FQ, 200000, 3);
    const double r_pred = predicted_cost(MethodKind::Base432FQ, 600000) /
                          predicted_cost(MethodKind::Base432FQ, 200000);
    CHECK(r_meas > r_pred / 2);
    CHECK(r_meas < r_pred * 2);
  }
}
