#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "ot1d/decomposition.hpp"
#include "ot1d/oracle.hpp"

using namespace ot1d;

namespace {

Problem fixture_4x4() {
    Problem raw;
    raw.supplies = {{0.0, 4.75}, {2.25, 3.75}, {5.75, 3.75}, {8.0, 1.5}};
    raw.demands = {{1.5, 3.25}, {3.25, 4.75}, {4.5, 1.75}, {6.5, 3.0}};
    return canonicalize(raw);
}

}  // namespace

TEST_CASE("single pair: neighbor list, leftmost list, strata") {
    Problem raw;
    raw.supplies = {{0.0, 1.0}};
    raw.demands = {{1.0, 1.0}};
    Problem p = canonicalize(raw);

    auto [nl, stacks] = build_neighbor_list(p);
    REQUIRE(nl.entries.size() == 2);
    CHECK(nl.entries[0].origin == 0);  // supply
    CHECK(nl.entries[0].y == doctest::Approx(0.0));
    CHECK(nl.entries[0].neighbor == 1);  // the demand
    CHECK(nl.entries[1].origin == 1);
    CHECK(nl.entries[1].y == doctest::Approx(1.0));
    CHECK(nl.entries[1].neighbor == kPlusInf);
    CHECK(stacks.f_exit == doctest::Approx(0.0));

    auto l0 = build_leftmost_list(stacks);
    REQUIRE(l0.size() == 2);
    CHECK(l0[0].y == doctest::Approx(1.0));
    CHECK(l0[0].neighbor == 0);
    CHECK(l0[1].y == doctest::Approx(0.0));
    CHECK(l0[1].neighbor == 0);
    CHECK(lookup_leftmost(l0, 0.5) == 0);
    CHECK(lookup_right_neighbor(nl, 0, 0.5) == 1);

    auto strata = compute_strata(nl, stacks);
    REQUIRE(strata.size() == 1);
    CHECK(strata[0].capacity == doctest::Approx(1.0));

    auto chains = extract_chains(nl, l0, p, strata[0]);
    REQUIRE(chains.size() == 1);
    CHECK(chains[0].kind == ChainKind::Balanced);
    CHECK(chains[0].supply_ids == std::vector<int>{0});
    CHECK(chains[0].demand_ids == std::vector<int>{0});
}

TEST_CASE("four-by-four fixture decomposes into eight strata") {
    Problem p = fixture_4x4();
    CHECK(p.total_supply() - p.total_demand() == doctest::Approx(1.0));

    auto [nl, stacks] = build_neighbor_list(p);
    CHECK(nl.entries.size() <= 2 * (4 + 4));
    auto strata = compute_strata(nl, stacks);
    REQUIRE(strata.size() == 8);

    // capacities tile the full vertical extent of the cumulative graph
    double total = 0.0;
    for (const auto& s : strata) total += s.capacity;
    CHECK(total == doctest::Approx(6.5));

    auto l0 = build_leftmost_list(stacks);
    auto find_band = [&](double lo, double hi) -> const Stratum& {
        for (const auto& s : strata)
            if (std::abs(s.y_bottom - lo) < 1e-12 && std::abs(s.y_top - hi) < 1e-12) return s;
        REQUIRE(false);
        return strata[0];
    };

    // the two bands just above the exit level hold the unbalanced chains
    const Stratum& upper = find_band(0.5, 1.0);
    auto chains_u = extract_chains(nl, l0, p, upper);
    REQUIRE(chains_u.size() == 1);
    CHECK(chains_u[0].kind == ChainKind::Unbalanced);
    CHECK(chains_u[0].supply_ids == std::vector<int>{0, 2, 3});
    CHECK(chains_u[0].demand_ids == std::vector<int>{1, 3});

    const Stratum& lower = find_band(0.0, 0.5);
    auto chains_l = extract_chains(nl, l0, p, lower);
    REQUIRE(chains_l.size() == 1);
    CHECK(chains_l[0].kind == ChainKind::Unbalanced);
    CHECK(chains_l[0].supply_ids == std::vector<int>{0, 2, 3});
    CHECK(chains_l[0].demand_ids == std::vector<int>{2, 3});

    // below the exit level chains start with a demand and come back reflected
    const Stratum& neg = find_band(-0.5, 0.0);
    auto chains_n = extract_chains(nl, l0, p, neg);
    REQUIRE(chains_n.size() == 1);
    CHECK(chains_n[0].reflected);
    CHECK(chains_n[0].kind == ChainKind::Balanced);
}

TEST_CASE("trivial transport of a merged block") {
    Problem raw;
    raw.supplies = {{0.0, 2.0}};
    raw.demands = {{1.0, 2.0}};
    auto res = solve(raw, CostSpec::power(0.5));
    REQUIRE(res.plan.entries.size() == 1);
    CHECK(res.plan.entries[0].supply == 0);
    CHECK(res.plan.entries[0].demand == 0);
    CHECK(res.plan.entries[0].mass == doctest::Approx(2.0));
    CHECK(res.plan.total_cost == doctest::Approx(2.0));  // 2 * g(1)
}

TEST_CASE("rational masses match the expanded oracle") {
    Problem raw;
    raw.supplies = {{0.0, 1.5}, {2.0, 0.5}};
    raw.demands = {{1.0, 1.0}, {3.0, 1.0}};
    CostSpec half = CostSpec::power(0.5);
    auto res = solve(raw, half);

    Problem expanded = expand_to_unitary(raw, 2);
    auto oracle = oracle_unitary(expanded, half);
    CHECK(res.plan.total_cost == doctest::Approx(oracle.min_cost / 2.0).epsilon(1e-9));
    CHECK(verify_marginals(res.plan, canonicalize(raw), true, 1e-9));
}

TEST_CASE("random rational instances match the expanded oracle end to end") {
    std::mt19937_64 rng(53);
    CostSpec costs[] = {CostSpec::power(0.3), CostSpec::power(0.5), CostSpec::power(0.9)};
    for (int trial = 0; trial < 150; ++trial) {
        std::uniform_real_distribution<double> u(0.0, 10.0);
        std::uniform_int_distribution<int> quarters(1, 4), count(1, 3);
        Problem raw;
        int m = count(rng), n = count(rng);
        for (int i = 0; i < m; ++i)
            raw.supplies.push_back({u(rng), quarters(rng) / 4.0});
        for (int j = 0; j < n; ++j)
            raw.demands.push_back({u(rng), quarters(rng) / 4.0});
        const CostSpec& cost = costs[trial % 3];

        auto res = solve(raw, cost);
        Problem expanded = expand_to_unitary(raw, 4);
        if (expanded.supplies.size() < expanded.demands.size())
            std::swap(expanded.supplies, expanded.demands);
        if (expanded.supplies.size() > 9 || expanded.demands.size() > 8) continue;
        auto oracle = oracle_unitary(expanded, cost);
        double want = oracle.min_cost / 4.0;
        CHECK(res.plan.total_cost ==
              doctest::Approx(want).epsilon(1e-9).scale(std::max(1.0, std::abs(want))));

        Problem canon = canonicalize(raw);
        CHECK(verify_marginals(res.plan, canon, true, 1e-9));
        CHECK(verify_non_crossing(res.plan, canon, true));
    }
}

TEST_CASE("chain and strata structure is independent of the cost") {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 30; ++trial) {
        std::uniform_real_distribution<double> u(0.0, 10.0);
        std::uniform_int_distribution<int> count(2, 12);
        Problem raw;
        int m = count(rng), n = count(rng);
        for (int i = 0; i < m; ++i) raw.supplies.push_back({u(rng), u(rng) + 0.1});
        for (int j = 0; j < n; ++j) raw.demands.push_back({u(rng), u(rng) + 0.1});

        auto a = solve(raw, CostSpec::power(0.3));
        auto b = solve(raw, CostSpec::log_cost());
        CHECK(a.num_strata == b.num_strata);
        CHECK(a.num_chains == b.num_chains);
        CHECK(a.num_lone_supplies == b.num_lone_supplies);
    }
}

TEST_CASE("size bounds on the sweep output") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 100; ++trial) {
        std::uniform_real_distribution<double> u(0.0, 100.0);
        std::uniform_int_distribution<int> count(1, 40);
        Problem raw;
        int m = count(rng), n = count(rng);
        for (int i = 0; i < m; ++i) raw.supplies.push_back({u(rng), u(rng) + 0.1});
        for (int j = 0; j < n; ++j) raw.demands.push_back({u(rng), u(rng) + 0.1});
        Problem p = canonicalize(raw);
        int mm = static_cast<int>(p.supplies.size());
        int nn = static_cast<int>(p.demands.size());

        auto [nl, stacks] = build_neighbor_list(p);
        CHECK(static_cast<int>(nl.entries.size()) <= 2 * (mm + nn));
        auto strata = compute_strata(nl, stacks);
        CHECK(static_cast<int>(strata.size()) <= mm + nn);
        // bands are contiguous and descending
        for (std::size_t i = 1; i < strata.size(); ++i)
            CHECK(strata[i].y_top == doctest::Approx(strata[i - 1].y_bottom));
    }
}

TEST_CASE("stratified plan is diagonal and covers the demand mass") {
    Problem p = fixture_4x4();
    auto res = solve(p, CostSpec::power(0.5));
    double mass = 0.0;
    for (const auto& e : res.stratified.entries) {
        CHECK(e.stratum >= 1);
        CHECK(e.stratum <= res.num_strata);
        mass += e.mass;
    }
    CHECK(mass == doctest::Approx(p.total_demand()));
    CHECK(verify_marginals(res.plan, p, true, 1e-9));
    CHECK(verify_non_crossing(res.plan, p, true));
}

TEST_CASE("solve respects OT1D_THREADS setting") {
    Problem p = fixture_4x4();
    auto serial = solve(p, CostSpec::power(0.5));
#ifdef _WIN32
    _putenv_s("OT1D_THREADS", "4");
#else
    setenv("OT1D_THREADS", "4", 1);
#endif
    auto parallel = solve(p, CostSpec::power(0.5));
#ifdef _WIN32
    _putenv_s("OT1D_THREADS", "");
#else
    unsetenv("OT1D_THREADS");
#endif
    CHECK(parallel.plan.total_cost == serial.plan.total_cost);  // bit identical
    REQUIRE(parallel.plan.entries.size() == serial.plan.entries.size());
    for (std::size_t i = 0; i < serial.plan.entries.size(); ++i) {
        CHECK(parallel.plan.entries[i].supply == serial.plan.entries[i].supply);
        CHECK(parallel.plan.entries[i].demand == serial.plan.entries[i].demand);
        CHECK(parallel.plan.entries[i].mass == serial.plan.entries[i].mass);
    }
}
