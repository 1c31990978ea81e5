#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ot1d/bench.hpp"
#include "ot1d/decomposition.hpp"
#include "ot1d/io.hpp"
#include "ot1d/oracle.hpp"

namespace {

// Exit codes: 2 parse, 3 validation, 4 oracle size guard, 5 oracle mismatch.
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitOracleGuard = 4;
constexpr int kExitOracleMismatch = 5;

std::vector<int> parse_sizes(const std::string& text) {
    std::vector<int> sizes;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            sizes.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw ot1d::ParseError("bad --sizes entry: " + item);
        }
    }
    return sizes;
}

int run_solve(const std::string& input, const std::string& cost_spec,
              const std::string& output, bool check_oracle, int oracle_denominator,
              bool stats) {
    ot1d::Problem problem = ot1d::parse_problem_file(input);
    ot1d::CostSpec cost = ot1d::parse_cost_spec(cost_spec);
    ot1d::SolveResult result = ot1d::solve(problem, cost);

    if (check_oracle) {
        // Rebuild the raw problem so the oracle sees the user's instance.
        ot1d::Problem raw;
        raw.supplies = problem.orig_supplies;
        raw.demands = problem.orig_demands;
        ot1d::Problem expanded = ot1d::expand_to_unitary(raw, oracle_denominator);
        if (expanded.supplies.size() < expanded.demands.size())
            std::swap(expanded.supplies, expanded.demands);  // cost is symmetric
        ot1d::OracleResult oracle = ot1d::oracle_unitary(expanded, cost);
        double oracle_cost = oracle.min_cost / oracle_denominator;
        double got = result.plan.total_cost;
        bool both_neg_inf = std::isinf(oracle_cost) && std::isinf(got) && oracle_cost < 0 &&
                            got < 0;
        if (!both_neg_inf &&
            std::abs(got - oracle_cost) > 1e-9 * std::max(1.0, std::abs(oracle_cost))) {
            std::cerr << "oracle mismatch: solver " << got << " vs oracle " << oracle_cost
                      << "\n";
            return kExitOracleMismatch;
        }
    }

    std::string doc = ot1d::result_to_json(result, problem, stats);
    if (output.empty()) {
        std::cout << doc;
    } else {
        std::ofstream out(output);
        if (!out) throw ot1d::ParseError("cannot write " + output);
        out << doc;
    }
    return 0;
}

int run_bench_cmd(const std::string& sizes_text, int reps, const std::string& cost_spec,
                  std::uint64_t seed, const std::string& csv) {
    ot1d::BenchConfig config;
    config.sizes = parse_sizes(sizes_text);
    config.reps = reps;
    config.cost = ot1d::parse_cost_spec(cost_spec);
    config.seed = seed;
    config.csv_path = csv;
    ot1d::BenchResult result = ot1d::run_bench(config);
    std::cout << "additions slope: " << result.additions_slope << "\n"
              << "evaluations slope: " << result.evals_slope << "\n";
    if (result.addition_bound_violations || result.eval_bound_violations)
        std::cout << "bound violations: additions " << result.addition_bound_violations
                  << ", evaluations " << result.eval_bound_violations << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"optimal 1D transport between weighted histograms under concave costs"};
    app.require_subcommand(1);

    auto* solve_cmd = app.add_subcommand("solve", "solve a problem file");
    std::string input, cost_spec, output;
    bool check_oracle = false, stats = false;
    int oracle_denominator = 1;
    solve_cmd->add_option("--input", input, "problem file (JSON or line format)")->required();
    solve_cmd->add_option("--cost", cost_spec, "cost spec: power:<alpha> or log")->required();
    solve_cmd->add_option("--output", output, "write result JSON here (default stdout)");
    solve_cmd->add_flag("--check-oracle", check_oracle, "cross-check with the exhaustive oracle");
    solve_cmd->add_option("--oracle-denominator", oracle_denominator,
                          "mass denominator for oracle expansion");
    solve_cmd->add_flag("--stats", stats, "include chain/strata diagnostics");

    auto* bench_cmd = app.add_subcommand("bench", "run the complexity benchmark");
    std::string sizes = "100,150,200,250,300,350,400,450,500", csv;
    int reps = 100;
    std::uint64_t seed = 1;
    bench_cmd->add_option("--sizes", sizes, "comma-separated N values");
    bench_cmd->add_option("--reps", reps, "repetitions per size");
    bench_cmd->add_option("--cost", cost_spec, "cost spec")->required();
    bench_cmd->add_option("--seed", seed, "RNG seed");
    bench_cmd->add_option("--csv", csv, "CSV output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve_cmd->parsed())
            return run_solve(input, cost_spec, output, check_oracle, oracle_denominator,
                             stats);
        return run_bench_cmd(sizes, reps, cost_spec, seed, csv);
    } catch (const ot1d::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ot1d::OracleGuardError& e) {
        std::cerr << "oracle guard: " << e.what() << "\n";
        return kExitOracleGuard;
    } catch (const ot1d::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
