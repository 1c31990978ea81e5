#include "ot1d/cost.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ot1d {

CostSpec CostSpec::power(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ValidationError("power cost needs alpha in (0,1)");
    CostSpec c;
    c.kind = Kind::Power;
    c.alpha = alpha;
    return c;
}

CostSpec CostSpec::log_cost() {
    CostSpec c;
    c.kind = Kind::Log;
    return c;
}

CostSpec CostSpec::custom(std::function<double(double)> g, double g0) {
    CostSpec c;
    c.kind = Kind::Custom;
    c.custom_g = std::move(g);
    c.custom_g0 = g0;
    return c;
}

double CostSpec::g(double x) const {
    switch (kind) {
        case Kind::Power:
            return std::pow(x, alpha);
        case Kind::Log:
            return x == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(x);
        case Kind::Custom: {
            if (x == 0.0 && std::isinf(custom_g0)) return custom_g0;
            double v = custom_g(x);
            // Normalize finite g(0) to 0.
            if (custom_g0 != 0.0 && !std::isinf(custom_g0)) v -= custom_g0;
            return v;
        }
    }
    return 0.0;
}

double eval_c(const CostSpec& cost, double p, double q, SolveStats& stats) {
    ++stats.cost_evaluations;
    return cost.g(std::abs(p - q));
}

namespace {
double f_of(double alpha, double a, double b, double c) {
    return std::pow(b, alpha) + 1.0 - std::pow(a, alpha) - std::pow(c, alpha);
}
}  // namespace

std::optional<double> alpha_threshold(double a, double b, double c) {
    if (!(a > 0.0 && b > 0.0 && c > 0.0))
        throw ValidationError("alpha_threshold needs positive a, b, c");
    if (std::abs(a + b + c - 1.0) > 1e-9)
        throw ValidationError("alpha_threshold needs a + b + c = 1");
    if (!(b <= std::min(a, c)))
        throw ValidationError("alpha_threshold needs b <= min(a, c)");
    if (b >= a * c) return std::nullopt;  // f > 0 and increasing on (0,1]

    // f(0+) = 0 with negative derivative ln b - ln a - ln c < 0, f(1) = 2b > 0:
    // bracket the unique root from below.
    double lo = 0.5;
    while (f_of(lo, a, b, c) >= 0.0) {
        lo *= 0.5;
        if (lo < 1e-300) return lo;  // root numerically at 0
    }
    double hi = 1.0;
    while (hi - lo > 1e-12) {
        double mid = 0.5 * (lo + hi);
        if (f_of(mid, a, b, c) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

bool concavity_probe(const CostSpec& cost, const std::vector<double>& xs) {
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
        if (cost.g(xs[i + 1]) < cost.g(xs[i]) - 1e-12) return false;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            double mid = 0.5 * (xs[i] + xs[j]);
            if (cost.g(mid) < 0.5 * (cost.g(xs[i]) + cost.g(xs[j])) - 1e-12) return false;
        }
    }
    return true;
}

}  // namespace ot1d
