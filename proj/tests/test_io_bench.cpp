#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ot1d/bench.hpp"
#include "ot1d/decomposition.hpp"
#include "ot1d/io.hpp"

using namespace ot1d;

TEST_CASE("line format parsing") {
    const char* text =
        "# two supplies, one demand\n"
        "s 0.0 1.5\n"
        "s 2.0 0.5  # inline comment\n"
        "d 1.0 1.0\n"
        "\n";
    Problem p = parse_problem_text(text);
    CHECK(p.canonical);
    REQUIRE(p.orig_supplies.size() == 2);
    REQUIRE(p.orig_demands.size() == 1);
    CHECK(p.orig_supplies[1].pos == 2.0);
    CHECK(p.orig_supplies[1].mass == 0.5);
}

TEST_CASE("JSON parsing matches line parsing") {
    Problem a = parse_problem_text(
        R"({"supplies": [[0.0, 1.5], [2.0, 0.5]], "demands": [[1.0, 1.0]]})");
    Problem b = parse_problem_text("s 0 1.5\ns 2 0.5\nd 1 1\n");
    REQUIRE(a.supplies.size() == b.supplies.size());
    for (std::size_t i = 0; i < a.supplies.size(); ++i) {
        CHECK(a.supplies[i].pos == b.supplies[i].pos);
        CHECK(a.supplies[i].mass == b.supplies[i].mass);
    }
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_problem_text("x 1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_problem_text("s 1\n"), ParseError);
    CHECK_THROWS_AS(parse_problem_text("s 1 2 3\n"), ParseError);
    CHECK_THROWS_AS(parse_problem_text("{not json"), ParseError);
    CHECK_THROWS_AS(parse_problem_text(R"({"supplies": []})"), ParseError);
    CHECK_THROWS_AS(parse_problem_text(R"({"supplies": [[0]], "demands": []})"), ParseError);
    CHECK_THROWS_AS(parse_problem_file("/nonexistent/path"), ParseError);
    // nonpositive masses are a validation failure, not a parse failure
    CHECK_THROWS_AS(parse_problem_text("s 0 0\nd 1 1\n"), ValidationError);
}

TEST_CASE("cost spec grammar") {
    CHECK(parse_cost_spec("log").kind == CostSpec::Kind::Log);
    CostSpec c = parse_cost_spec("power:0.25");
    CHECK(c.kind == CostSpec::Kind::Power);
    CHECK(c.alpha == 0.25);
    CHECK_THROWS_AS(parse_cost_spec("power:1.0"), ParseError);
    CHECK_THROWS_AS(parse_cost_spec("power:0"), ParseError);
    CHECK_THROWS_AS(parse_cost_spec("power:abc"), ParseError);
    CHECK_THROWS_AS(parse_cost_spec("power:0.5junk"), ParseError);
    CHECK_THROWS_AS(parse_cost_spec("euclid"), ParseError);
}

TEST_CASE("result JSON carries the plan and counters") {
    Problem p = parse_problem_text("s 0 1\ns 1.2 1\nd 1 1\nd 2.2 1\n");
    auto res = solve(p, CostSpec::power(0.5));
    std::string doc = result_to_json(res, p, true);
    CHECK(doc.find("\"plan\"") != std::string::npos);
    CHECK(doc.find("\"total_cost\"") != std::string::npos);
    CHECK(doc.find("\"additions\"") != std::string::npos);
    CHECK(doc.find("\"num_strata\"") != std::string::npos);
    std::string lean = result_to_json(res, p, false);
    CHECK(lean.find("\"diagnostics\"") == std::string::npos);
}

TEST_CASE("bench_instance is deterministic and well formed") {
    Problem a = bench_instance(42, 50, 3);
    Problem b = bench_instance(42, 50, 3);
    REQUIRE(a.supplies.size() == 50);
    REQUIRE(a.demands.size() == 50);
    for (std::size_t i = 0; i < 50; ++i) {
        CHECK(a.supplies[i].pos == b.supplies[i].pos);
        CHECK(a.demands[i].pos == b.demands[i].pos);
    }
    Problem c = bench_instance(42, 50, 4);
    CHECK(a.supplies[0].pos != c.supplies[0].pos);

    // alternating roles: supplies at even ranks, demands at odd ranks
    for (std::size_t i = 0; i + 1 < 50; ++i) {
        CHECK(a.supplies[i].pos < a.demands[i].pos);
        CHECK(a.demands[i].pos < a.supplies[i + 1].pos);
    }
}

TEST_CASE("slope fit recovers a known exponent") {
    std::vector<double> xs, ys;
    for (double x : {10.0, 20.0, 40.0, 80.0}) {
        xs.push_back(x);
        ys.push_back(3.5 * x * x);
    }
    CHECK(fit_loglog_slope(xs, ys) == doctest::Approx(2.0).epsilon(1e-6));
    CHECK_THROWS(fit_loglog_slope({1.0}, {1.0}));
}

TEST_CASE("bench runs are reproducible") {
    BenchConfig config;
    config.sizes = {10, 20, 30};
    config.reps = 5;
    config.cost = CostSpec::power(0.5);
    config.seed = 7;
    auto a = run_bench(config);
    auto b = run_bench(config);
    CHECK(bench_csv(config, a) == bench_csv(config, b));
    CHECK(a.additions_slope == b.additions_slope);
    REQUIRE(a.rows.size() == 3);
    for (const auto& row : a.rows) {
        CHECK(row.mean_additions > 0.0);
        CHECK(row.mean_cost_evals > 0.0);
    }

    BenchConfig bad = config;
    bad.sizes = {30, 20};
    CHECK_THROWS(run_bench(bad));
}
