#include "ot1d/chain_solver.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace ot1d {

namespace {

struct PendingEvent {
    char kind;
    int order;
    int anchor;
};

// Collect the negative indicators of one line and consume them: accept
// left-to-right skipping overlapping slot spans, apply removals
// right-to-left so current indices stay valid.
bool consume_negatives(IndicatorTable& table, const std::vector<IndicatorTable::LineEntry>& line,
                       int k, std::vector<int>& sigma_inverse,
                       std::vector<MatchEvent>& events, bool check_theorem) {
    std::vector<PendingEvent> accepted;
    int blocked_hi = -1;
    for (const auto& e : line) {
        if (!(e.value < 0.0)) continue;
        if (!accepted.empty() && e.i <= blocked_hi) continue;  // overlapping span
        accepted.push_back({e.kind, k, e.i});
        blocked_hi = e.i + k;
    }
    if (accepted.empty()) return false;

    if (check_theorem && !table.lower_lines_nonnegative(k))
        throw std::logic_error("negative indicator below the consumed order");

    // Record matches before any removal (indices refer to the same chain).
    std::vector<MatchEvent> batch;
    for (const auto& a : accepted) {
        MatchEvent ev{a.kind, a.order, a.anchor, {}};
        for (int j = 1; j <= a.order; ++j) {
            int si = a.anchor + j;
            int di = (a.kind == 'p') ? a.anchor + j - 1 : a.anchor + j;
            ev.pairs.emplace_back(table.supply_id(si), table.demand_id(di));
        }
        batch.push_back(std::move(ev));
    }
    for (const auto& ev : batch) {
        for (const auto& [s, d] : ev.pairs) sigma_inverse[d] = s;
        events.push_back(ev);
    }
    for (auto it = accepted.rbegin(); it != accepted.rend(); ++it)
        table.remove_span(it->order, it->anchor, it->kind);
    return true;
}

Chain require_kind(const Chain& chain, ChainKind kind, const char* what) {
    if (chain.kind != kind) throw ValidationError(what);
    if (chain.supply_pos.size() != chain.supply_ids.size() ||
        chain.demand_pos.size() != chain.demand_ids.size())
        throw ValidationError("chain positions/ids mismatch");
    return chain;
}

}  // namespace

ChainSolveResult solve_balanced_chain(const Chain& chain, const CostSpec& cost,
                                      bool check_theorem) {
    require_kind(chain, ChainKind::Balanced, "solve_balanced_chain needs a balanced chain");
    const int n = static_cast<int>(chain.demand_pos.size());
    ChainSolveResult res;
    res.assignment.sigma_inverse.assign(n, -1);
    if (n == 0) return res;

    IndicatorTable table(chain.supply_pos, chain.demand_pos, cost, &res.stats);
    int k = 1;
    while (table.demand_count() > 0 && k <= table.max_order()) {
        auto line = table.fill_line(k);
        if (consume_negatives(table, line, k, res.assignment.sigma_inverse, res.events,
                              check_theorem))
            k = 1;
        else
            ++k;
    }
    // Terminal rule: no negative indicator at any order, sigma(i) = i.
    for (int i = 0; i < table.demand_count(); ++i)
        res.assignment.sigma_inverse[table.demand_id(i)] = table.supply_id(i);
    return res;
}

ChainSolveResult solve_unbalanced_chain(const Chain& chain, const CostSpec& cost,
                                        bool check_theorem) {
    require_kind(chain, ChainKind::Unbalanced, "solve_unbalanced_chain needs an unbalanced chain");
    const int n = static_cast<int>(chain.demand_pos.size());
    if (chain.supply_pos.size() != chain.demand_pos.size() + 1)
        throw ValidationError("unbalanced chain needs M = N + 1");
    ChainSolveResult res;
    res.assignment.sigma_inverse.assign(n, -1);

    IndicatorTable table(chain.supply_pos, chain.demand_pos, cost, &res.stats);
    int k = 1;
    while (table.demand_count() > 0 && k <= table.max_order()) {
        auto line = table.fill_line(k);
        if (consume_negatives(table, line, k, res.assignment.sigma_inverse, res.events,
                              check_theorem))
            k = 1;
        else
            ++k;
    }

    const int nc = table.demand_count();  // remaining demands; supplies = nc + 1
    if (nc == 0) {
        res.assignment.exposed_supplies.push_back(table.supply_id(0));
        return res;
    }

    // Nesting-free fallback: choose the exposed supply m among the isolation
    // rule survivors, cost(m) = sum_{j<m} c(p_j,q_j) + sum_{j>=m} c(p_{j+1},q_j).
    std::vector<double> prefix(nc + 1, 0.0), suffix(nc + 1, 0.0);
    for (int j = 0; j < nc; ++j) {
        prefix[j + 1] = prefix[j] + table.cost_at(j, j);
        if (j > 0) ++res.stats.additions;
    }
    for (int j = nc - 1; j >= 0; --j) {
        suffix[j] = suffix[j + 1] + table.cost_at(j + 1, j);
        if (j < nc - 1) ++res.stats.additions;
    }
    int best_m = -1;
    double best_cost = 0.0;
    for (int m = 0; m <= nc; ++m) {
        bool isolated = (m == 0 || table.cost_at(m, m - 1) >= table.cost_at(m - 1, m - 1)) &&
                        (m == nc || table.cost_at(m, m) >= table.cost_at(m + 1, m));
        if (!isolated) continue;
        double c = prefix[m] + suffix[m];
        ++res.stats.additions;
        if (best_m < 0 || c < best_cost) {
            best_m = m;
            best_cost = c;
        }
    }
    assert(best_m >= 0);  // the optimal exposure always passes the isolation rule
    for (int j = 0; j < nc; ++j) {
        int si = (j < best_m) ? j : j + 1;
        res.assignment.sigma_inverse[table.demand_id(j)] = table.supply_id(si);
    }
    res.assignment.exposed_supplies.push_back(table.supply_id(best_m));
    return res;
}

std::set<int> prefilter_exposed(const Chain& chain, const CostSpec& cost) {
    require_kind(chain, ChainKind::Unbalanced, "prefilter_exposed needs an unbalanced chain");
    const int n = static_cast<int>(chain.demand_pos.size());
    std::set<int> out;
    auto c = [&](int si, int di) {
        return cost.g(std::abs(chain.supply_pos[si] - chain.demand_pos[di]));
    };
    for (int m = 0; m <= n; ++m) {
        bool left_ok = (m == 0) || c(m, m - 1) >= c(m - 1, m - 1);
        bool right_ok = (m == n) || c(m, m) >= c(m + 1, m);
        if (left_ok && right_ok) out.insert(m);
    }
    return out;
}

bool verify_no_crossing(const Assignment& assignment, const Chain& chain) {
    std::vector<std::pair<double, double>> arcs;
    for (std::size_t d = 0; d < assignment.sigma_inverse.size(); ++d) {
        int s = assignment.sigma_inverse[d];
        if (s < 0) continue;
        double a = chain.supply_pos[s], b = chain.demand_pos[d];
        arcs.emplace_back(std::min(a, b), std::max(a, b));
    }
    for (std::size_t x = 0; x < arcs.size(); ++x) {
        for (std::size_t y = x + 1; y < arcs.size(); ++y) {
            const auto& [a1, b1] = arcs[x];
            const auto& [a2, b2] = arcs[y];
            bool disjoint = b1 <= a2 || b2 <= a1;
            bool nested = (a1 <= a2 && b2 <= b1) || (a2 <= a1 && b1 <= b2);
            if (!disjoint && !nested) return false;
        }
    }
    return true;
}

}  // namespace ot1d
