#include "ot1d/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "ot1d/chain_solver.hpp"
#include "parallel.hpp"

namespace ot1d {

namespace {

struct LookupError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double point_pos(const Problem& p, int id) {
    const int m = static_cast<int>(p.supplies.size());
    return id < m ? p.supplies[id].pos : p.demands[id - m].pos;
}

}  // namespace

CumulativeGraph cumulative_graph(const Problem& problem) {
    CumulativeGraph g;
    const int m = static_cast<int>(problem.supplies.size());
    const int n = static_cast<int>(problem.demands.size());
    g.supply_fx.resize(m);
    g.demand_fx.resize(n);
    double f = 0.0;
    int i = 0, j = 0;
    while (i < m || j < n) {
        bool supply = j >= n || (i < m && problem.supplies[i].pos < problem.demands[j].pos);
        if (supply) {
            g.supply_fx[i] = {f, f + problem.supplies[i].mass};
            f += problem.supplies[i].mass;
            ++i;
        } else {
            g.demand_fx[j] = {f, f - problem.demands[j].mass};
            f -= problem.demands[j].mass;
            ++j;
        }
    }
    g.s_minus_d = f;
    return g;
}

std::pair<NeighborList, StacksState> build_neighbor_list(const Problem& problem) {
    const int m = static_cast<int>(problem.supplies.size());
    const int n = static_cast<int>(problem.demands.size());
    NeighborList nl;
    nl.num_supplies = m;
    nl.num_demands = n;
    StacksState st;
    st.s_minus_d = problem.total_supply() - problem.total_demand();

    std::vector<NeighborEntry> emitted;  // reversed at the end ("prepend")
    auto& sp = st.sp;
    auto& sq = st.sq;
    double f = st.s_minus_d;
    int i = m - 1, j = n - 1;
    while (i >= 0 || j >= 0) {
        bool supply = j < 0 || (i >= 0 && problem.supplies[i].pos > problem.demands[j].pos);
        if (supply) {
            const double s = problem.supplies[i].mass;
            const int pid = i;
            while (true) {  // loop B
                if (sq.empty()) {
                    emitted.push_back({pid, f - s, kPlusInf});
                    break;
                }
                auto [qid, fq] = sq.back();
                sq.pop_back();
                if (fq <= f - s) {
                    emitted.push_back({pid, f - s, qid});
                    if (fq < f - s) sq.emplace_back(qid, fq);
                    break;
                }
                emitted.push_back({pid, fq, qid});
            }
            sp.emplace_back(pid, f);
            f -= s;
            --i;
        } else {
            const double d = problem.demands[j].mass;
            const int qid = m + j;
            while (true) {  // loop C
                if (sp.empty()) {
                    emitted.push_back({qid, f + d, kPlusInf});
                    break;
                }
                auto [pid2, fp] = sp.back();
                sp.pop_back();
                if (fp >= f + d) {
                    emitted.push_back({qid, f + d, pid2});
                    if (fp > f + d) sp.emplace_back(pid2, fp);
                    break;
                }
                emitted.push_back({qid, fp, pid2});
            }
            sq.emplace_back(qid, f);
            f += d;
            --j;
        }
    }
    st.f_exit = f;

    nl.entries.assign(emitted.rbegin(), emitted.rend());
    nl.point_range.assign(m + n, {0, 0});
    for (int e = 0; e < static_cast<int>(nl.entries.size()); ++e) {
        auto& [begin, count] = nl.point_range[nl.entries[e].origin];
        if (count == 0) begin = e;
        ++count;
    }
    return {std::move(nl), std::move(st)};
}

std::vector<NeighborEntry> build_leftmost_list(StacksState stacks) {
    std::vector<NeighborEntry> l_prime, l_second, l0;
    while (!stacks.sq.empty()) {  // demands visible from -inf
        auto [qid, fq] = stacks.sq.back();
        stacks.sq.pop_back();
        l_second.push_back({kMinusInf, fq, qid});
    }
    while (!stacks.sp.empty()) {  // supplies, prepended
        auto [pid, fp] = stacks.sp.back();
        stacks.sp.pop_back();
        l_prime.push_back({kMinusInf, fp, pid});
    }
    std::reverse(l_prime.begin(), l_prime.end());

    if (l_prime.empty() && l_second.empty()) return l0;
    int middle;
    if (l_prime.empty()) {
        middle = l_second.front().neighbor;
    } else if (l_second.empty()) {
        middle = l_prime.back().neighbor;
    } else {
        // The level-0 element would pick the leftmost of the two candidate
        // points, but it is only ever consulted at y = 0, which is always a
        // stratum border; keep the supply for determinism.
        middle = l_prime.back().neighbor;
    }
    l0 = std::move(l_prime);
    l0.push_back({kMinusInf, stacks.f_exit, middle});
    l0.insert(l0.end(), l_second.begin(), l_second.end());
    return l0;
}

int lookup_right_neighbor(const NeighborList& nl, int point, double y) {
    if (point < 0 || point >= static_cast<int>(nl.point_range.size()))
        throw LookupError("lookup_right_neighbor: bad point id");
    auto [begin, count] = nl.point_range[point];
    if (count == 0) throw LookupError("lookup_right_neighbor: point has no entries");
    const bool is_supply = point < nl.num_supplies;
    auto first = nl.entries.begin() + begin;
    auto last = first + count;
    // Supply entries ascend in y from F(p); demand entries descend from F(q).
    // Take the last entry whose level is on the element's side of y.
    auto it = std::partition_point(first, last, [&](const NeighborEntry& e) {
        return is_supply ? e.y <= y : e.y >= y;
    });
    if (it == first) throw LookupError("lookup_right_neighbor: element outside segment");
    return std::prev(it)->neighbor;
}

int lookup_leftmost(const std::vector<NeighborEntry>& l0, double y) {
    if (y == 0.0 || l0.empty()) throw LookupError("lookup_leftmost: level on stratum border");
    // l0 is descending in y; first index with y_e < y.
    auto it = std::partition_point(l0.begin(), l0.end(),
                                   [&](const NeighborEntry& e) { return e.y >= y; });
    if (y > 0.0) {
        if (it == l0.begin()) throw LookupError("lookup_leftmost: level above all chains");
        return std::prev(it)->neighbor;
    }
    if (it == l0.end()) throw LookupError("lookup_leftmost: level below all chains");
    return it->neighbor;
}

std::vector<Stratum> compute_strata(const NeighborList& nl, const StacksState& stacks) {
    std::vector<double> ys;
    ys.reserve(nl.entries.size() + 2);
    for (const auto& e : nl.entries) ys.push_back(e.y);
    ys.push_back(stacks.s_minus_d);  // F(+inf), absent from L when the
    ys.push_back(stacks.f_exit);     // rightmost point is a supply; F(-inf)
    std::sort(ys.begin(), ys.end(), std::greater<double>());

    double scale = 1.0;
    for (double y : ys) scale = std::max(scale, std::abs(y));
    const double tol = 1e-12 * scale;

    std::vector<double> levels;
    for (double y : ys)
        if (levels.empty() || levels.back() - y > tol) levels.push_back(y);

    std::vector<Stratum> strata;
    for (std::size_t k = 1; k < levels.size(); ++k)
        strata.push_back({static_cast<int>(k), levels[k - 1], levels[k],
                          levels[k - 1] - levels[k]});
    return strata;
}

std::vector<Chain> extract_chains(const NeighborList& nl,
                                  const std::vector<NeighborEntry>& l0,
                                  const Problem& problem, const Stratum& stratum) {
    const double y = 0.5 * (stratum.y_top + stratum.y_bottom);
    const int m = nl.num_supplies;
    std::vector<int> seq;
    int cur = lookup_leftmost(l0, y);
    const int limit = m + nl.num_demands;
    while (cur != kPlusInf) {
        if (static_cast<int>(seq.size()) > limit)
            throw std::logic_error("extract_chains: neighbor link cycle");
        seq.push_back(cur);
        cur = lookup_right_neighbor(nl, cur, y);
    }

    Chain chain;
    for (int id : seq) {
        if (id < m) {
            chain.supply_ids.push_back(id);
            chain.supply_pos.push_back(problem.supplies[id].pos);
        } else {
            chain.demand_ids.push_back(id - m);
            chain.demand_pos.push_back(problem.demands[id - m].pos);
        }
    }
    const bool starts_supply = seq.front() < m;
    const bool ends_supply = seq.back() < m;
    if (starts_supply && !ends_supply) {
        chain.kind = ChainKind::Balanced;  // form 1
    } else if (!starts_supply && ends_supply) {
        // Form 2 (demand-first): normalize by reflection, ids keep mapping.
        chain.kind = ChainKind::Balanced;
        chain.reflected = true;
        std::reverse(chain.supply_ids.begin(), chain.supply_ids.end());
        std::reverse(chain.demand_ids.begin(), chain.demand_ids.end());
        std::reverse(chain.supply_pos.begin(), chain.supply_pos.end());
        std::reverse(chain.demand_pos.begin(), chain.demand_pos.end());
        for (double& p : chain.supply_pos) p = -p;
        for (double& p : chain.demand_pos) p = -p;
    } else if (starts_supply && ends_supply) {
        chain.kind = seq.size() == 1 ? ChainKind::LoneSupply : ChainKind::Unbalanced;  // supply-first, supply-last
    } else {
        throw std::logic_error("extract_chains: demand-first demand-last chain");
    }
    return {std::move(chain)};
}

SolveResult solve(const Problem& problem, const CostSpec& cost) {
    const Problem prob = problem.canonical ? problem : canonicalize(problem);
    SolveResult out;

    auto [nl, stacks] = build_neighbor_list(prob);
    const auto l0 = build_leftmost_list(stacks);
    const auto strata = compute_strata(nl, stacks);
    out.num_strata = static_cast<int>(strata.size());

    struct Job {
        Chain chain;
        double mass;
        int stratum;
    };
    std::vector<Job> jobs;
    for (const auto& stratum : strata) {
        for (auto& chain : extract_chains(nl, l0, prob, stratum)) {
            ++out.num_chains;
            if (chain.kind == ChainKind::LoneSupply) {
                ++out.num_lone_supplies;  // never matched in any optimum
                continue;
            }
            jobs.push_back({std::move(chain), stratum.capacity, stratum.index});
        }
    }

    struct JobResult {
        Assignment assignment;
        SolveStats stats;
    };
    std::vector<JobResult> results(jobs.size());
    detail::parallel_for(static_cast<int>(jobs.size()), detail::env_threads(), [&](int idx) {
        const auto& chain = jobs[idx].chain;
        auto r = chain.kind == ChainKind::Balanced ? solve_balanced_chain(chain, cost)
                                                   : solve_unbalanced_chain(chain, cost);
        results[idx] = {std::move(r.assignment), r.stats};
    });

    std::map<std::pair<int, int>, double> gamma;  // canonical (i, j) -> mass
    for (std::size_t idx = 0; idx < jobs.size(); ++idx) {
        out.stats.merge(results[idx].stats);
        const auto& chain = jobs[idx].chain;
        const auto& sigma = results[idx].assignment.sigma_inverse;
        for (std::size_t d = 0; d < sigma.size(); ++d) {
            if (sigma[d] < 0) continue;
            const int ci = chain.supply_ids[sigma[d]];
            const int cj = chain.demand_ids[d];
            gamma[{ci, cj}] += jobs[idx].mass;
            out.stratified.entries.push_back({jobs[idx].stratum, ci, cj, jobs[idx].mass});
        }
    }

    // Project back to original input indexing, splitting merged points
    // across their origin shares.
    auto sup_origins = prob.supply_origins;
    auto dem_origins = prob.demand_origins;
    TransportPlan plan;
    for (const auto& [key, mass] : gamma) {
        auto& so = sup_origins[key.first];
        auto& dos = dem_origins[key.second];
        double rem = mass;
        while (rem > 1e-15 * mass && !so.empty() && !dos.empty()) {
            double take = std::min({rem, so.front().mass, dos.front().mass});
            PlanEntry e;
            e.supply = prob.orientation_swapped ? dos.front().index : so.front().index;
            e.demand = prob.orientation_swapped ? so.front().index : dos.front().index;
            e.mass = take;
            plan.entries.push_back(e);
            rem -= take;
            so.front().mass -= take;
            if (so.front().mass <= 1e-15 * mass) so.erase(so.begin());
            dos.front().mass -= take;
            if (dos.front().mass <= 1e-15 * mass) dos.erase(dos.begin());
        }
    }
    plan.entries.insert(plan.entries.end(), prob.cancelled.begin(), prob.cancelled.end());

    double total = 0.0;
    bool neg_inf = false;
    for (const auto& e : plan.entries) {
        double c = cost.g(std::abs(prob.orig_supplies[e.supply].pos -
                                   prob.orig_demands[e.demand].pos));
        if (std::isinf(c) && c < 0)
            neg_inf = true;
        else
            total += e.mass * c;
    }
    plan.total_cost = neg_inf ? -std::numeric_limits<double>::infinity() : total;
    out.plan = std::move(plan);
    return out;
}

}  // namespace ot1d
