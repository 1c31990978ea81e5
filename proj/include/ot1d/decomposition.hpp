#pragma once

#include <vector>

#include "ot1d/cost.hpp"
#include "ot1d/model.hpp"

namespace ot1d {

// Point ids: 0..M-1 supplies, M..M+N-1 demands. Sentinels below.
constexpr int kMinusInf = -1;
constexpr int kPlusInf = -2;

struct NeighborEntry {
    int origin;    // point id, or kMinusInf for L0 entries
    double y;      // cumulative-function break level F(. +- 0)
    int neighbor;  // point id or kPlusInf
};

// Breakpoints of the cumulative function F (left-continuous): per point,
// (F(x), F(x+0)); upward jumps at supplies, downward at demands.
struct CumulativeGraph {
    std::vector<std::pair<double, double>> supply_fx;  // (F(p), F(p+0))
    std::vector<std::pair<double, double>> demand_fx;  // (F(q), F(q+0))
    double s_minus_d = 0.0;
};

// Stacks left over after the right-to-left sweep; consumed by the
// leftmost-list construction.
struct StacksState {
    std::vector<std::pair<int, double>> sp;  // (supply id, F(p+0)), top = back
    std::vector<std::pair<int, double>> sq;  // (demand id, F(q+0))
    double f_exit = 0.0;                     // F(-inf) = 0 with f init S-D
    double s_minus_d = 0.0;
};

struct NeighborList {
    std::vector<NeighborEntry> entries;           // final L order
    std::vector<std::pair<int, int>> point_range;  // per point id: (begin, count)
    int num_supplies = 0;
    int num_demands = 0;
};

CumulativeGraph cumulative_graph(const Problem& problem);

// Right-to-left stack sweep building right-neighbor ranges; |L| <= 2(M+N).
std::pair<NeighborList, StacksState> build_neighbor_list(const Problem& problem);

// Right neighbors of -inf, ordered by decreasing y.
std::vector<NeighborEntry> build_leftmost_list(StacksState stacks);

// Dictionary lookup of r(point, y): O(log(M+N)).
int lookup_right_neighbor(const NeighborList& nl, int point, double y);

// Leftmost chain point at level y (never call with y on a stratum border).
int lookup_leftmost(const std::vector<NeighborEntry>& l0, double y);

// Distinct break levels of L (plus F(+-inf)) descending; stratum k spans
// (y_k, y_{k-1}) with capacity m_k. 1 <= K <= M+N.
std::vector<Stratum> compute_strata(const NeighborList& nl, const StacksState& stacks);

// Follow right-neighbor links at the stratum midpoint; demand-first chains
// are normalized by reflection, single exposed supplies
// become LoneSupply.
std::vector<Chain> extract_chains(const NeighborList& nl,
                                  const std::vector<NeighborEntry>& l0,
                                  const Problem& problem, const Stratum& stratum);

struct SolveResult {
    TransportPlan plan;  // original input indexing, pre-swap, cancelled mass re-added
    SolveStats stats;
    StratifiedPlan stratified;  // canonical indexing, diagonal by construction
    int num_strata = 0;
    int num_chains = 0;
    int num_lone_supplies = 0;
};

// Full pipeline: canonicalize, decompose into per-stratum chains, solve
// each chain (parallel workers capped by OT1D_THREADS), scale by stratum
// capacity and project back to the original indexing.
SolveResult solve(const Problem& problem, const CostSpec& cost);

}  // namespace ot1d
