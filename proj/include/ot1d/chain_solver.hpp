#pragma once

#include <set>
#include <utility>
#include <vector>

#include "ot1d/cost.hpp"
#include "ot1d/indicators.hpp"
#include "ot1d/model.hpp"

namespace ot1d {

// One consumed negative indicator: the local match it certifies.
struct MatchEvent {
    char kind;   // 'p': sigma(i) = i-1 nesting, 'q': sigma(i) = i
    int order;   // k0
    int anchor;  // i0, current chain index at consumption time
    std::vector<std::pair<int, int>> pairs;  // (supply id, demand id), chain-local
};

struct ChainSolveResult {
    Assignment assignment;
    SolveStats stats;
    std::vector<MatchEvent> events;
};

// Indicator-consumption loop on a balanced chain. `check_theorem`
// re-verifies from the stored table that all lower-order indicators are
// nonnegative before each consumption.
ChainSolveResult solve_balanced_chain(const Chain& chain, const CostSpec& cost,
                                      bool check_theorem = false);

// Unbalanced chain (M = N+1): indicator loop with unbalanced bounds, then
// the nesting-free prefix-sum enumeration filtered by the isolation rule.
ChainSolveResult solve_unbalanced_chain(const Chain& chain, const CostSpec& cost,
                                        bool check_theorem = false);

// Isolation rule: supplies that may be exposed in an optimum.
std::set<int> prefilter_exposed(const Chain& chain, const CostSpec& cost);

bool verify_no_crossing(const Assignment& assignment, const Chain& chain);

}  // namespace ot1d
