#include "ot1d/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ot1d {

namespace {

void enumerate(const std::vector<double>& sup, const std::vector<double>& dem,
               const CostSpec& cost, int j, unsigned used, double acc,
               std::vector<int>& pick, OracleResult& best) {
    const int n = static_cast<int>(dem.size());
    if (j == n) {
        if (best.argmin_plans.empty()) {
            best.min_cost = acc;
        } else {
            const double tol =
                1e-12 * std::max(1.0, std::min(std::abs(best.min_cost), 1e300));
            if (acc < best.min_cost - tol) {
                best.min_cost = acc;
                best.argmin_plans.clear();
            } else if (acc > best.min_cost + tol) {
                return;
            }
        }
        TransportPlan plan;
        for (int d = 0; d < n; ++d) plan.entries.push_back({pick[d], d, 1.0});
        plan.total_cost = acc;
        best.argmin_plans.push_back(std::move(plan));
        return;
    }
    for (int i = 0; i < static_cast<int>(sup.size()); ++i) {
        if (used & (1u << i)) continue;
        double c = cost.g(std::abs(sup[i] - dem[j]));
        double next = acc + c;
        if (std::isinf(c) && c < 0) next = -std::numeric_limits<double>::infinity();
        pick[j] = i;
        enumerate(sup, dem, cost, j + 1, used | (1u << i), next, pick, best);
    }
}

}  // namespace

OracleResult oracle_unitary(const Problem& problem, const CostSpec& cost) {
    const int m = static_cast<int>(problem.supplies.size());
    const int n = static_cast<int>(problem.demands.size());
    if (n > 8 || m > 9)
        throw OracleGuardError("oracle_unitary size guard: need N <= 8, M <= 9");
    if (m < n) throw OracleGuardError("oracle_unitary needs at least as many supplies");
    std::vector<double> sup, dem;
    for (const auto& p : problem.supplies) {
        if (p.mass != 1.0) throw ValidationError("oracle_unitary needs unit masses");
        sup.push_back(p.pos);
    }
    for (const auto& q : problem.demands) {
        if (q.mass != 1.0) throw ValidationError("oracle_unitary needs unit masses");
        dem.push_back(q.pos);
    }
    OracleResult best;
    best.min_cost = std::numeric_limits<double>::infinity();
    std::vector<int> pick(n, -1);
    enumerate(sup, dem, cost, 0, 0u, 0.0, pick, best);
    if (n == 0) {
        best.min_cost = 0.0;
        best.argmin_plans = {TransportPlan{}};
    }
    return best;
}

Problem expand_to_unitary(const Problem& problem, int denominator) {
    if (denominator <= 0) throw ValidationError("denominator must be positive");
    Problem out;
    auto expand = [&](const std::vector<WeightedPoint>& in, std::vector<WeightedPoint>& to) {
        for (const auto& wp : in) {
            double scaled = wp.mass * denominator;
            double rounded = std::round(scaled);
            if (std::abs(scaled - rounded) > 1e-9 || rounded < 1.0)
                throw ValidationError("mass not rational under the given denominator");
            for (int a = 0; a < static_cast<int>(rounded); ++a) to.push_back({wp.pos, 1.0});
        }
    };
    expand(problem.supplies, out.supplies);
    expand(problem.demands, out.demands);
    return out;
}

OracleResult oracle_nesting_free_unbalanced(const Chain& chain, const CostSpec& cost) {
    if (chain.kind != ChainKind::Unbalanced && !(chain.demand_pos.empty() &&
                                                 chain.supply_pos.size() == 1))
        throw ValidationError("oracle_nesting_free_unbalanced needs an unbalanced chain");
    const int n = static_cast<int>(chain.demand_pos.size());
    OracleResult best;
    best.min_cost = std::numeric_limits<double>::infinity();
    const double tol = 1e-12;
    for (int m = 0; m <= n; ++m) {
        double acc = 0.0;
        TransportPlan plan;
        for (int j = 0; j < n; ++j) {
            int si = j < m ? j : j + 1;
            acc += cost.g(std::abs(chain.supply_pos[si] - chain.demand_pos[j]));
            plan.entries.push_back({si, j, 1.0});
        }
        plan.total_cost = acc;
        if (best.argmin_plans.empty() || acc < best.min_cost - tol) {
            best.min_cost = acc;
            best.argmin_plans = {std::move(plan)};
        } else if (acc <= best.min_cost + tol) {
            best.argmin_plans.push_back(std::move(plan));
        }
    }
    if (n == 0) {
        best.min_cost = 0.0;
        best.argmin_plans = {TransportPlan{}};
    }
    return best;
}

}  // namespace ot1d
