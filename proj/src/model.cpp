#include "ot1d/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ot1d/cost.hpp"

namespace ot1d {

double Problem::total_supply() const {
    double s = 0.0;
    for (const auto& p : supplies) s += p.mass;
    return s;
}

double Problem::total_demand() const {
    double d = 0.0;
    for (const auto& q : demands) d += q.mass;
    return d;
}

namespace {

struct CanonPoint {
    double pos;
    double mass;
    std::vector<OriginShare> origins;
};

// Sort by position and merge exact duplicates, keeping origin shares.
std::vector<CanonPoint> sort_merge(const std::vector<WeightedPoint>& points,
                                   const std::vector<std::vector<OriginShare>>& origins) {
    std::vector<CanonPoint> out;
    out.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!(points[i].mass > 0.0))
            throw ValidationError("nonpositive mass at position " +
                                  std::to_string(points[i].pos));
        if (std::isnan(points[i].pos) || std::isinf(points[i].pos))
            throw ValidationError("non-finite position");
        CanonPoint cp{points[i].pos, points[i].mass, {}};
        if (i < origins.size() && !origins[i].empty())
            cp.origins = origins[i];
        else
            cp.origins = {{static_cast<int>(i), points[i].mass}};
        out.push_back(std::move(cp));
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const CanonPoint& a, const CanonPoint& b) { return a.pos < b.pos; });
    std::vector<CanonPoint> merged;
    for (auto& cp : out) {
        if (!merged.empty() && merged.back().pos == cp.pos) {
            merged.back().mass += cp.mass;
            merged.back().origins.insert(merged.back().origins.end(), cp.origins.begin(),
                                         cp.origins.end());
        } else {
            merged.push_back(std::move(cp));
        }
    }
    return merged;
}

// Consume `amount` from the front of a point's origin shares, returning the
// consumed (original index, mass) pieces.
std::vector<OriginShare> consume_origins(std::vector<OriginShare>& origins, double amount) {
    std::vector<OriginShare> taken;
    while (amount > 0.0 && !origins.empty()) {
        OriginShare& front = origins.front();
        double take = std::min(front.mass, amount);
        taken.push_back({front.index, take});
        front.mass -= take;
        amount -= take;
        if (front.mass <= 0.0) origins.erase(origins.begin());
        if (amount <= 1e-15 * take) break;  // absorb rounding dust
    }
    return taken;
}

}  // namespace

Problem canonicalize(const Problem& raw) {
    Problem out;
    out.orig_supplies = raw.canonical ? raw.orig_supplies : raw.supplies;
    out.orig_demands = raw.canonical ? raw.orig_demands : raw.demands;
    out.cancelled = raw.cancelled;
    out.orientation_swapped = raw.orientation_swapped;

    auto sup = sort_merge(raw.supplies, raw.supply_origins);
    auto dem = sort_merge(raw.demands, raw.demand_origins);

    // Common-point cancellation: min(s, d) stays in place.
    std::vector<CanonPoint> sup2, dem2;
    std::size_t i = 0, j = 0;
    while (i < sup.size() || j < dem.size()) {
        if (j >= dem.size() || (i < sup.size() && sup[i].pos < dem[j].pos)) {
            sup2.push_back(std::move(sup[i++]));
        } else if (i >= sup.size() || dem[j].pos < sup[i].pos) {
            dem2.push_back(std::move(dem[j++]));
        } else {
            double m = std::min(sup[i].mass, dem[j].mass);
            auto s_shares = consume_origins(sup[i].origins, m);
            auto d_shares = consume_origins(dem[j].origins, m);
            // Pair the consumed shares (both sum to m) into plan entries in
            // original pre-swap indexing.
            std::size_t a = 0, b = 0;
            double sa = s_shares.empty() ? 0.0 : s_shares[0].mass;
            double db = d_shares.empty() ? 0.0 : d_shares[0].mass;
            while (a < s_shares.size() && b < d_shares.size()) {
                double take = std::min(sa, db);
                PlanEntry e;
                e.supply = raw.orientation_swapped ? d_shares[b].index : s_shares[a].index;
                e.demand = raw.orientation_swapped ? s_shares[a].index : d_shares[b].index;
                e.mass = take;
                out.cancelled.push_back(e);
                sa -= take;
                db -= take;
                if (sa <= 0.0 && ++a < s_shares.size()) sa = s_shares[a].mass;
                if (db <= 0.0 && ++b < d_shares.size()) db = d_shares[b].mass;
            }
            sup[i].mass -= m;
            dem[j].mass -= m;
            if (sup[i].mass > 0.0) sup2.push_back(std::move(sup[i]));
            if (dem[j].mass > 0.0) dem2.push_back(std::move(dem[j]));
            ++i;
            ++j;
        }
    }

    double s_total = 0.0, d_total = 0.0;
    for (const auto& p : sup2) s_total += p.mass;
    for (const auto& q : dem2) d_total += q.mass;
    bool swap_now = s_total < d_total;
    if (swap_now) {
        std::swap(sup2, dem2);
        out.orientation_swapped = !raw.orientation_swapped;
    }

    for (auto& cp : sup2) {
        out.supplies.push_back({cp.pos, cp.mass});
        out.supply_origins.push_back(std::move(cp.origins));
    }
    for (auto& cp : dem2) {
        out.demands.push_back({cp.pos, cp.mass});
        out.demand_origins.push_back(std::move(cp.origins));
    }
    out.canonical = true;
    return out;
}

double plan_cost(const TransportPlan& plan, const Problem& problem, const CostSpec& cost) {
    double total = 0.0;
    for (const auto& e : plan.entries) {
        if (e.supply < 0 || e.supply >= static_cast<int>(problem.supplies.size()) ||
            e.demand < 0 || e.demand >= static_cast<int>(problem.demands.size()))
            throw ValidationError("plan index out of range");
        double c = cost.g(std::abs(problem.supplies[e.supply].pos -
                                   problem.demands[e.demand].pos));
        if (std::isinf(c) && c < 0) return -std::numeric_limits<double>::infinity();
        total += e.mass * c;
    }
    return total;
}

namespace {

bool marginals_ok(const TransportPlan& plan, const std::vector<WeightedPoint>& sup,
                  const std::vector<WeightedPoint>& dem, bool demands_exact,
                  double rel_tol) {
    std::vector<double> out_mass(sup.size(), 0.0), in_mass(dem.size(), 0.0);
    for (const auto& e : plan.entries) {
        if (e.supply < 0 || e.supply >= static_cast<int>(sup.size())) return false;
        if (e.demand < 0 || e.demand >= static_cast<int>(dem.size())) return false;
        if (!(e.mass > 0.0)) return false;
        out_mass[e.supply] += e.mass;
        in_mass[e.demand] += e.mass;
    }
    for (std::size_t i = 0; i < sup.size(); ++i) {
        if (out_mass[i] > sup[i].mass * (1.0 + rel_tol) + 1e-300) return false;
        if (!demands_exact &&
            std::abs(out_mass[i] - sup[i].mass) > rel_tol * std::max(1.0, sup[i].mass))
            return false;
    }
    for (std::size_t j = 0; j < dem.size(); ++j) {
        if (in_mass[j] > dem[j].mass * (1.0 + rel_tol) + 1e-300) return false;
        if (demands_exact &&
            std::abs(in_mass[j] - dem[j].mass) > rel_tol * std::max(1.0, dem[j].mass))
            return false;
    }
    return true;
}

}  // namespace

bool verify_marginals(const TransportPlan& plan, const Problem& problem, bool original,
                      double rel_tol) {
    if (original) {
        // In the input orientation the smaller side is met exactly; when the
        // roles were swapped during canonicalization that is the supply side.
        return marginals_ok(plan, problem.orig_supplies, problem.orig_demands,
                            !problem.orientation_swapped, rel_tol);
    }
    return marginals_ok(plan, problem.supplies, problem.demands, true, rel_tol);
}

bool verify_non_crossing(const TransportPlan& plan, const Problem& problem, bool original) {
    const auto& sup = original ? problem.orig_supplies : problem.supplies;
    const auto& dem = original ? problem.orig_demands : problem.demands;
    std::vector<std::pair<double, double>> arcs;
    arcs.reserve(plan.entries.size());
    for (const auto& e : plan.entries) {
        double a = sup[e.supply].pos, b = dem[e.demand].pos;
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
