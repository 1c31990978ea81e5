#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ot1d/chain_solver.hpp"
#include "ot1d/oracle.hpp"

using namespace ot1d;

namespace {

Chain make_chain(ChainKind kind, std::vector<double> p, std::vector<double> q) {
    Chain c;
    c.kind = kind;
    c.supply_pos = std::move(p);
    c.demand_pos = std::move(q);
    c.supply_ids.resize(c.supply_pos.size());
    c.demand_ids.resize(c.demand_pos.size());
    for (std::size_t i = 0; i < c.supply_ids.size(); ++i) c.supply_ids[i] = static_cast<int>(i);
    for (std::size_t i = 0; i < c.demand_ids.size(); ++i) c.demand_ids[i] = static_cast<int>(i);
    return c;
}

double assignment_cost(const Assignment& a, const Chain& chain, const CostSpec& cost) {
    double total = 0.0;
    for (std::size_t d = 0; d < a.sigma_inverse.size(); ++d) {
        int s = a.sigma_inverse[d];
        REQUIRE(s >= 0);
        total += cost.g(std::abs(chain.supply_pos[s] - chain.demand_pos[d]));
    }
    return total;
}

Problem chain_as_problem(const Chain& chain) {
    Problem p;
    for (double x : chain.supply_pos) p.supplies.push_back({x, 1.0});
    for (double x : chain.demand_pos) p.demands.push_back({x, 1.0});
    return p;
}

std::vector<double> sorted_uniform(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(0.0, 10.0);
    std::vector<double> xs(n);
    for (double& x : xs) x = u(rng);
    std::sort(xs.begin(), xs.end());
    return xs;
}

}  // namespace

TEST_CASE("two-pair chain flips from nested to parallel with alpha") {
    Chain chain = make_chain(ChainKind::Balanced, {0.0, 1.2}, {1.0, 2.2});

    auto nested = solve_balanced_chain(chain, CostSpec::power(0.5), true);
    CHECK(nested.assignment.sigma_inverse == std::vector<int>{1, 0});
    CHECK(assignment_cost(nested.assignment, chain, CostSpec::power(0.5)) ==
          doctest::Approx(1.9304532929190905).epsilon(1e-12));
    REQUIRE(nested.events.size() == 1);
    CHECK(nested.events[0].kind == 'p');
    CHECK(nested.events[0].order == 1);

    auto parallel = solve_balanced_chain(chain, CostSpec::power(0.9), true);
    CHECK(parallel.assignment.sigma_inverse == std::vector<int>{0, 1});
    CHECK(parallel.events.empty());
}

TEST_CASE("single pair chain") {
    Chain chain = make_chain(ChainKind::Balanced, {0.0}, {1.0});
    auto res = solve_balanced_chain(chain, CostSpec::power(0.5));
    CHECK(res.assignment.sigma_inverse == std::vector<int>{0});
}

TEST_CASE("balanced chains match the exhaustive oracle") {
    std::mt19937_64 rng(31);
    CostSpec costs[] = {CostSpec::power(0.3), CostSpec::power(0.5), CostSpec::power(0.9),
                        CostSpec::log_cost()};
    for (int trial = 0; trial < 300; ++trial) {
        std::uniform_int_distribution<int> nd(2, 7);
        int n = nd(rng);
        auto all = sorted_uniform(rng, 2 * n);
        std::vector<double> p, q;
        for (int i = 0; i < 2 * n; ++i) (i % 2 == 0 ? p : q).push_back(all[i]);
        Chain chain = make_chain(ChainKind::Balanced, p, q);
        const CostSpec& cost = costs[trial % 4];

        auto res = solve_balanced_chain(chain, cost, true);
        auto oracle = oracle_unitary(chain_as_problem(chain), cost);
        double got = assignment_cost(res.assignment, chain, cost);
        CHECK(got == doctest::Approx(oracle.min_cost)
                         .epsilon(1e-9)
                         .scale(std::max(1.0, std::abs(oracle.min_cost))));
        CHECK(verify_no_crossing(res.assignment, chain));
    }
}

TEST_CASE("unbalanced chains match the exhaustive oracle") {
    std::mt19937_64 rng(37);
    CostSpec costs[] = {CostSpec::power(0.3), CostSpec::power(0.5), CostSpec::power(0.9),
                        CostSpec::log_cost()};
    for (int trial = 0; trial < 300; ++trial) {
        std::uniform_int_distribution<int> nd(1, 6);
        int n = nd(rng);
        auto all = sorted_uniform(rng, 2 * n + 1);
        std::vector<double> p, q;
        for (int i = 0; i < 2 * n + 1; ++i) (i % 2 == 0 ? p : q).push_back(all[i]);
        Chain chain = make_chain(ChainKind::Unbalanced, p, q);
        const CostSpec& cost = costs[trial % 4];

        auto res = solve_unbalanced_chain(chain, cost, true);
        auto oracle = oracle_unitary(chain_as_problem(chain), cost);
        double got = assignment_cost(res.assignment, chain, cost);
        CHECK(got == doctest::Approx(oracle.min_cost)
                         .epsilon(1e-9)
                         .scale(std::max(1.0, std::abs(oracle.min_cost))));
        CHECK(verify_no_crossing(res.assignment, chain));

        // the chosen exposure must survive the isolation prefilter
        REQUIRE(res.assignment.exposed_supplies.size() == 1);
        auto allowed = prefilter_exposed(chain, cost);
        CHECK(allowed.count(res.assignment.exposed_supplies[0]) == 1);
    }
}

TEST_CASE("isolation prefilter prunes interior supplies next to demands") {
    Chain chain = make_chain(ChainKind::Unbalanced, {0.0, 10.0, 20.0}, {9.0, 19.0});
    auto allowed = prefilter_exposed(chain, CostSpec::power(0.5));
    // both interior supplies sit right next to their demands, only the
    // leftmost supply can stay exposed
    CHECK(allowed == std::set<int>{0});

    auto res = solve_unbalanced_chain(chain, CostSpec::power(0.5));
    REQUIRE(res.assignment.exposed_supplies.size() == 1);
    CHECK(res.assignment.exposed_supplies[0] == 0);
    CHECK(res.assignment.sigma_inverse == std::vector<int>{1, 2});
}

TEST_CASE("isolation prefilter keeps equality cases") {
    Chain chain = make_chain(ChainKind::Unbalanced, {0.0, 2.0, 4.0}, {1.0, 3.0});
    auto allowed = prefilter_exposed(chain, CostSpec::power(0.5));
    CHECK(allowed == std::set<int>{0, 1, 2});

    auto res = solve_unbalanced_chain(chain, CostSpec::power(0.5));
    CHECK(assignment_cost(res.assignment, chain, CostSpec::power(0.5)) ==
          doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("verify_no_crossing flags a crossing assignment") {
    Chain chain = make_chain(ChainKind::Balanced, {0.0, 1.0}, {2.0, 3.0});
    Assignment crossing;
    crossing.sigma_inverse = {0, 1};  // arcs [0,2] and [1,3]
    CHECK_FALSE(verify_no_crossing(crossing, chain));
    Assignment nested;
    nested.sigma_inverse = {1, 0};
    CHECK(verify_no_crossing(nested, chain));
}

TEST_CASE("kind validation") {
    Chain chain = make_chain(ChainKind::Balanced, {0.0, 2.0}, {1.0, 3.0});
    CHECK_THROWS_AS(solve_unbalanced_chain(chain, CostSpec::power(0.5)), ValidationError);
    chain.kind = ChainKind::Unbalanced;
    CHECK_THROWS_AS(solve_balanced_chain(chain, CostSpec::power(0.5)), ValidationError);
}
