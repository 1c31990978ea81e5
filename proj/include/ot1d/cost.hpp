#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ot1d/model.hpp"

namespace ot1d {

// Strictly concave nondecreasing distance cost c(p, q) = g(|p - q|) with
// g(0) = 0 (or -inf for the log family).
struct CostSpec {
    enum class Kind { Power, Log, Custom };

    Kind kind = Kind::Power;
    double alpha = 0.5;                  // Power only, 0 < alpha < 1
    std::function<double(double)> custom_g;  // Custom only
    double custom_g0 = 0.0;              // declared g(0), possibly -inf

    static CostSpec power(double alpha);
    static CostSpec log_cost();
    static CostSpec custom(std::function<double(double)> g, double g0);

    // Raw evaluation of g(|p-q|), no counting. Log at distance 0 gives -inf.
    double g(double x) const;
};

// Counted evaluation of c(p, q). The pairwise memo lives in IndicatorTable;
// this always charges one evaluation, callers go through the memo for hits.
double eval_c(const CostSpec& cost, double p, double q, SolveStats& stats);

// Sign analysis for power costs: f(alpha) = b^a + 1 - a^a - c^a on
// the simplex a+b+c=1 with b <= min(a,c). Returns the unique root on (0,1]
// when b < ac (f < 0 below, >= 0 above), or nullopt when b >= ac (f > 0).
std::optional<double> alpha_threshold(double a, double b, double c);

// Midpoint concavity + monotonicity probe on sampled abscissae.
bool concavity_probe(const CostSpec& cost, const std::vector<double>& xs);

}  // namespace ot1d
