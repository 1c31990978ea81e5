#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ot1d/cost.hpp"
#include "ot1d/model.hpp"

namespace ot1d {

struct BenchConfig {
    std::vector<int> sizes;  // nonempty, increasing
    int reps = 100;
    CostSpec cost;
    std::uint64_t seed = 0;
    std::string csv_path;  // empty = no file
};

struct BenchRow {
    int n = 0;
    double mean_additions = 0.0;
    double mean_cost_evals = 0.0;
    std::int64_t max_additions = 0;
    std::int64_t max_cost_evals = 0;
};

struct BenchResult {
    std::vector<BenchRow> rows;
    double additions_slope = 0.0;
    double evals_slope = 0.0;
    // Criterion bookkeeping: runs violating additions <= 3N^2-6N (N >= 3)
    // or cost_evaluations <= N(N+1)/2.
    int addition_bound_violations = 0;
    int eval_bound_violations = 0;
};

// One benchmark instance: 2n i.i.d. uniform [0,1] points, sorted, roles
// alternating supply/demand so the instance is a single balanced chain
// (coincident draws rejected). Deterministic in (seed, n, rep).
Problem bench_instance(std::uint64_t seed, int n, int rep);

// Runs the harness (reps parallelized per OT1D_THREADS), writes the CSV if
// requested, fits log-log OLS slopes of the mean counters vs N.
BenchResult run_bench(const BenchConfig& config);

std::string bench_csv(const BenchConfig& config, const BenchResult& result);

// Ordinary least squares slope of log(y) vs log(x).
double fit_loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys);

// Worker count: OT1D_THREADS env var, 0/unset = serial.
int worker_threads();

}  // namespace ot1d
