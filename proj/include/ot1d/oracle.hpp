#pragma once

#include <stdexcept>
#include <vector>

#include "ot1d/cost.hpp"
#include "ot1d/model.hpp"

namespace ot1d {

struct OracleGuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OracleResult {
    double min_cost = 0.0;
    std::vector<TransportPlan> argmin_plans;  // all ties within 1e-12
};

// Exhaustive minimum over injective demand->supply maps. Unit masses only;
// guarded to N <= 8 demands, M <= 9 supplies.
OracleResult oracle_unitary(const Problem& problem, const CostSpec& cost);

// Replace each weighted point by mass*denominator coincident unit atoms.
Problem expand_to_unitary(const Problem& problem, int denominator);

// All N+1 nesting-free plans of an unbalanced chain, evaluated exactly.
OracleResult oracle_nesting_free_unbalanced(const Chain& chain, const CostSpec& cost);

}  // namespace ot1d
