#include "ot1d/bench.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ot1d/decomposition.hpp"
#include "parallel.hpp"

namespace ot1d {

int worker_threads() { return detail::env_threads(); }

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Uniform double in [0,1) from raw bits: identical across platforms.
double uniform01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

}  // namespace

Problem bench_instance(std::uint64_t seed, int n, int rep) {
    std::uint64_t s = splitmix64(seed ^ splitmix64((static_cast<std::uint64_t>(n) << 32) ^
                                                   static_cast<std::uint64_t>(rep)));
    std::mt19937_64 rng(s);
    std::vector<double> xs(2 * n);
    while (true) {
        for (double& x : xs) x = uniform01(rng);
        std::sort(xs.begin(), xs.end());
        if (std::adjacent_find(xs.begin(), xs.end()) == xs.end()) break;  // reject ties
    }
    Problem p;
    for (int i = 0; i < 2 * n; ++i)
        (i % 2 == 0 ? p.supplies : p.demands).push_back({xs[i], 1.0});
    return p;
}

double fit_loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("fit_loglog_slope needs >= 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double lx = std::log(xs[i]), ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

BenchResult run_bench(const BenchConfig& config) {
    if (config.sizes.empty() || config.reps < 1)
        throw std::invalid_argument("bench needs nonempty sizes and reps >= 1");
    for (std::size_t i = 1; i < config.sizes.size(); ++i)
        if (config.sizes[i] <= config.sizes[i - 1])
            throw std::invalid_argument("bench sizes must be increasing");

    BenchResult result;
    const int threads = worker_threads();
    for (int n : config.sizes) {
        std::vector<SolveStats> stats(config.reps);
        detail::parallel_for(config.reps, threads, [&](int rep) {
            Problem p = bench_instance(config.seed, n, rep);
            stats[rep] = solve(p, config.cost).stats;
        });
        BenchRow row;
        row.n = n;
        double sa = 0, se = 0;
        for (const auto& st : stats) {
            sa += static_cast<double>(st.additions);
            se += static_cast<double>(st.cost_evaluations);
            row.max_additions = std::max(row.max_additions, st.additions);
            row.max_cost_evals = std::max(row.max_cost_evals, st.cost_evaluations);
            if (n >= 3 && st.additions > 3ll * n * n - 6ll * n)
                ++result.addition_bound_violations;
            if (st.cost_evaluations > static_cast<std::int64_t>(n) * (n + 1) / 2)
                ++result.eval_bound_violations;
        }
        row.mean_additions = sa / config.reps;
        row.mean_cost_evals = se / config.reps;
        result.rows.push_back(row);
    }

    std::vector<double> ns, adds, evals;
    for (const auto& r : result.rows) {
        ns.push_back(r.n);
        adds.push_back(r.mean_additions);
        evals.push_back(r.mean_cost_evals);
    }
    if (ns.size() >= 2) {
        result.additions_slope = fit_loglog_slope(ns, adds);
        result.evals_slope = fit_loglog_slope(ns, evals);
    }

    if (!config.csv_path.empty()) {
        std::ofstream out(config.csv_path);
        if (!out) throw std::runtime_error("cannot write " + config.csv_path);
        out << bench_csv(config, result);
    }
    return result;
}

std::string bench_csv(const BenchConfig& config, const BenchResult& result) {
    std::ostringstream out;
    out << "N,mean_additions,mean_cost_evals,reps,seed\n";
    out.precision(17);
    for (const auto& r : result.rows)
        out << r.n << ',' << r.mean_additions << ',' << r.mean_cost_evals << ','
            << config.reps << ',' << config.seed << '\n';
    return out.str();
}

}  // namespace ot1d
