#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// Core domain types for 1D transport between weighted histograms.
namespace ot1d {

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WeightedPoint {
    double pos = 0.0;
    double mass = 0.0;
};

struct PlanEntry {
    int supply = -1;
    int demand = -1;
    double mass = 0.0;
};

// Share of a canonical point that came from one original input record.
struct OriginShare {
    int index = -1;   // index into the original input list for that side
    double mass = 0.0;
};

// Supply/demand histograms on the line. canonicalize() sorts, merges
// side-duplicates, cancels common points in place and normalizes to
// total supply >= total demand by swapping roles if needed.
struct Problem {
    std::vector<WeightedPoint> supplies;
    std::vector<WeightedPoint> demands;
    bool orientation_swapped = false;
    bool canonical = false;

    // Per canonical point, which original records (post-swap side) feed it.
    std::vector<std::vector<OriginShare>> supply_origins;
    std::vector<std::vector<OriginShare>> demand_origins;
    // Zero-distance mass cancelled during canonicalization, recorded in
    // original (pre-swap) indexing so it can be re-added to the plan.
    std::vector<PlanEntry> cancelled;
    // Original input as given, pre-swap (for reporting and marginal checks).
    std::vector<WeightedPoint> orig_supplies;
    std::vector<WeightedPoint> orig_demands;

    double total_supply() const;
    double total_demand() const;
};

struct TransportPlan {
    std::vector<PlanEntry> entries;
    double total_cost = 0.0;  // -inf allowed when g(0) = -inf hits a zero leg
};

enum class ChainKind { Balanced, Unbalanced, LoneSupply };

// Maximal alternating supply/demand sequence. Positions are stored
// explicitly (possibly reflected, see `reflected`); ids refer to the
// canonical parent problem and always map plan entries back correctly.
struct Chain {
    ChainKind kind = ChainKind::Balanced;
    std::vector<int> supply_ids;
    std::vector<int> demand_ids;
    std::vector<double> supply_pos;
    std::vector<double> demand_pos;
    bool reflected = false;  // demand-first chain normalized by reflection
};

// Partial assignment on one chain: demand index -> supply index
// (chain-local), plus the unmatched supplies.
struct Assignment {
    std::vector<int> sigma_inverse;  // size = #demands, values in [0, M)
    std::vector<int> exposed_supplies;
};

struct Stratum {
    int index = 0;       // 1-based k
    double y_top = 0.0;  // y_{k-1}
    double y_bottom = 0.0;
    double capacity = 0.0;  // m_k = y_top - y_bottom
};

struct StratifiedEntry {
    int stratum = 0;  // 1-based stratum index k; diagonal by construction
    int supply = -1;
    int demand = -1;
    double mass = 0.0;
};

struct StratifiedPlan {
    std::vector<StratifiedEntry> entries;
};

// Deterministic operation counters (additions, cost evaluations).
struct SolveStats {
    std::int64_t additions = 0;
    std::int64_t cost_evaluations = 0;

    void merge(const SolveStats& other) {
        additions += other.additions;
        cost_evaluations += other.cost_evaluations;
    }
};

struct CostSpec;  // cost.hpp

Problem canonicalize(const Problem& raw);

double plan_cost(const TransportPlan& plan, const Problem& problem, const CostSpec& cost);

// Marginal feasibility: sum_i gamma_ij = d_j, sum_j gamma_ij <= s_i.
// `original` selects whether entries index problem.orig_* (pre-swap) or the
// canonical lists.
bool verify_marginals(const TransportPlan& plan, const Problem& problem, bool original,
                      double rel_tol = 1e-12);

// Pairwise non-crossing of plan arcs: spanned open intervals are disjoint
// or nested (exact comparisons).
bool verify_non_crossing(const TransportPlan& plan, const Problem& problem, bool original);

}  // namespace ot1d
