#pragma once

#include <vector>

#include "ot1d/cost.hpp"
#include "ot1d/model.hpp"

namespace ot1d {

// Incremental local-matching-indicator table for one chain, with exact
// addition accounting (3 additions per fresh indicator) and a pairwise
// cost memo.
//
// Indices are 0-based throughout: order k >= 1, anchor i >= 0. For a chain
// with M supplies and N demands (M == N balanced, M == N+1 unbalanced):
//   I^p_k(i): i in [0, N-k)                    (both cases)
//   I^q_k(i): i in [0, N-k-1) balanced, [0, N-k) unbalanced
//
// Cached rows (indicators and diagonal/shift prefix sums) are keyed by the
// chain-local original id of the window's leftmost point, which is stable
// across removals; remove_span only invalidates windows intersecting the
// removed span.
class IndicatorTable {
public:
    IndicatorTable(std::vector<double> supply_pos, std::vector<double> demand_pos,
                   const CostSpec& cost, SolveStats* stats);

    int supply_count() const { return static_cast<int>(cs_.size()); }
    int demand_count() const { return static_cast<int>(cd_.size()); }
    bool balanced() const { return cs_.size() == cd_.size(); }

    // Chain-local original id of the i-th current supply/demand.
    int supply_id(int i) const { return cs_[i]; }
    int demand_id(int i) const { return cd_[i]; }
    double supply_position(int i) const { return sp0_[cs_[i]]; }
    double demand_position(int i) const { return dp0_[cd_[i]]; }

    double indicator_p(int k, int i);
    double indicator_q(int k, int i);

    struct LineEntry {
        char kind;  // 'p' or 'q'
        int i;
        double value;
    };
    // All order-k indicators, interleaved p/q per ascending anchor i.
    std::vector<LineEntry> fill_line(int k);

    // Largest order with a nonempty line on the current chain (N-1), or 0.
    int max_order() const;

    // Consume a negative indicator at (k0, i0): drop the matched span and
    // invalidate exactly the cached windows that intersect it.
    // kind 'p' removes supplies i0+1..i0+k0 and demands i0..i0+k0-1;
    // kind 'q' removes supplies and demands i0+1..i0+k0.
    void remove_span(int k0, int i0, char kind);

    // Counted-memo cost evaluation for current indices (exposed for the
    // unbalanced fallback so its probes share the memo).
    double cost_at(int i, int j);

    // Introspection for tests.
    bool has_cached_p(int k, int i) const;
    bool has_cached_q(int k, int i) const;
    int cached_count_at_order(int k) const;
    std::int64_t memo_misses() const { return stats_->cost_evaluations; }

    // Debug: all stored indicators of orders < k0 on the current chain are
    // present and nonnegative (precondition for consuming at order k0).
    bool lower_lines_nonnegative(int k0) const;

private:
    double diag_sum(int k, int i);   // sum_{j=0..k} c(p_{i+j}, q_{i+j})
    double shift_sum(int k, int i);  // sum_{j=0..k-1} c(p_{i+j+1}, q_{i+j})
    std::vector<double>& row(std::vector<std::vector<double>>& rows, int k, bool demand_anchor);
    void invalidate(std::vector<std::vector<double>>& rows, int k, int lo, int hi,
                    bool demand_anchor);

    std::vector<double> sp0_, dp0_;  // original positions by chain-local id
    std::vector<int> cs_, cd_;       // current index -> chain-local id
    const CostSpec* cost_;
    SolveStats* stats_;

    std::vector<double> memo_;  // (supply_id * N0 + demand_id) -> c, NaN = miss
    // Rows indexed by order; values by anchor id, NaN = absent.
    std::vector<std::vector<double>> D_;   // diag_sum, supply anchor, k >= 0
    std::vector<std::vector<double>> S_;   // shift_sum, demand anchor, k >= 1
    std::vector<std::vector<double>> Ip_;  // supply anchor, k >= 1
    std::vector<std::vector<double>> Iq_;  // demand anchor, k >= 1
};

}  // namespace ot1d
