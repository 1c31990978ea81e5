#pragma once

#include <string>

#include "ot1d/cost.hpp"
#include "ot1d/decomposition.hpp"
#include "ot1d/model.hpp"

namespace ot1d {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Problem document: JSON {"supplies": [[pos, mass], ...], "demands": ...}
// or line format `s <pos> <mass>` / `d <pos> <mass>` with `#` comments.
// Returns the canonicalized problem.
Problem parse_problem_text(const std::string& text);
Problem parse_problem_file(const std::string& path);

// Cost grammar: `power:<alpha>` with 0 < alpha < 1, or `log`.
CostSpec parse_cost_spec(const std::string& spec);

// Result document (plan in original input indexing, pre-swap).
std::string result_to_json(const SolveResult& result, const Problem& problem,
                           bool include_stats);

}  // namespace ot1d
