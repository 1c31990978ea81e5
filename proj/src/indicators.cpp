#include "ot1d/indicators.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ot1d {

namespace {
constexpr double kAbsent = std::numeric_limits<double>::quiet_NaN();

bool present(const std::vector<double>& row, int anchor) {
    return anchor >= 0 && anchor < static_cast<int>(row.size()) && !std::isnan(row[anchor]);
}
}  // namespace

IndicatorTable::IndicatorTable(std::vector<double> supply_pos, std::vector<double> demand_pos,
                               const CostSpec& cost, SolveStats* stats)
    : sp0_(std::move(supply_pos)), dp0_(std::move(demand_pos)), cost_(&cost), stats_(stats) {
    const std::size_t m = sp0_.size(), n = dp0_.size();
    if (m != n && m != n + 1)
        throw ValidationError("indicator table needs a balanced or unbalanced chain");
    cs_.resize(m);
    cd_.resize(n);
    std::iota(cs_.begin(), cs_.end(), 0);
    std::iota(cd_.begin(), cd_.end(), 0);
    memo_.assign(m * n, kAbsent);
}

double IndicatorTable::cost_at(int i, int j) {
    const std::size_t key =
        static_cast<std::size_t>(cs_[i]) * dp0_.size() + static_cast<std::size_t>(cd_[j]);
    if (std::isnan(memo_[key]))
        memo_[key] = eval_c(*cost_, sp0_[cs_[i]], dp0_[cd_[j]], *stats_);
    return memo_[key];
}

std::vector<double>& IndicatorTable::row(std::vector<std::vector<double>>& rows, int k,
                                         bool demand_anchor) {
    if (k >= static_cast<int>(rows.size())) rows.resize(k + 1);
    auto& r = rows[k];
    if (r.empty()) r.assign(demand_anchor ? dp0_.size() : sp0_.size(), kAbsent);
    return r;
}

double IndicatorTable::diag_sum(int k, int i) {
    const int a = cs_[i];
    row(D_, k, false);
    int kk = k;
    while (kk >= 0 && !present(D_[kk], a)) --kk;
    double v;
    if (kk < 0) {
        v = cost_at(i, i);
        row(D_, 0, false)[a] = v;
        kk = 0;
    } else {
        v = D_[kk][a];
    }
    for (int t = kk + 1; t <= k; ++t) {
        v += cost_at(i + t, i + t);
        ++stats_->additions;
        D_[t][a] = v;
    }
    return v;
}

double IndicatorTable::shift_sum(int k, int i) {
    if (k == 0) return 0.0;
    const int a = cd_[i];
    row(S_, k, true);
    int kk = k;
    while (kk >= 1 && !present(S_[kk], a)) --kk;
    double v;
    if (kk < 1) {
        v = cost_at(i + 1, i);
        row(S_, 1, true)[a] = v;
        kk = 1;
    } else {
        v = S_[kk][a];
    }
    for (int t = kk + 1; t <= k; ++t) {
        v += cost_at(i + t, i + t - 1);
        ++stats_->additions;
        S_[t][a] = v;
    }
    return v;
}

double IndicatorTable::indicator_p(int k, int i) {
    const int n = demand_count();
    if (k < 1 || i < 0 || i + k > n - 1 || i + k > supply_count() - 1)
        throw std::out_of_range("indicator_p index");
    const int a = cs_[i];
    if (k < static_cast<int>(Ip_.size()) && present(Ip_[k], a)) return Ip_[k][a];
    double v = cost_at(i, i + k) + shift_sum(k, i) - diag_sum(k, i);
    stats_->additions += 2;
    row(Ip_, k, false)[a] = v;
    return v;
}

double IndicatorTable::indicator_q(int k, int i) {
    const int n = demand_count();
    if (k < 1 || i < 0 || i + k > n - 1 || i + k + 1 > supply_count() - 1)
        throw std::out_of_range("indicator_q index");
    const int a = cd_[i];
    if (k < static_cast<int>(Iq_.size()) && present(Iq_[k], a)) return Iq_[k][a];
    double v = cost_at(i + k + 1, i) + diag_sum(k - 1, i + 1) - shift_sum(k + 1, i);
    stats_->additions += 2;
    row(Iq_, k, true)[a] = v;
    return v;
}

int IndicatorTable::max_order() const {
    return demand_count() > 0 ? demand_count() - 1 : 0;
}

std::vector<IndicatorTable::LineEntry> IndicatorTable::fill_line(int k) {
    const int n = demand_count();
    const int np = std::max(0, n - k);
    const int nq = std::max(0, balanced() ? n - k - 1 : n - k);
    std::vector<LineEntry> out;
    out.reserve(np + nq);
    for (int i = 0; i < std::max(np, nq); ++i) {
        if (i < np) out.push_back({'p', i, indicator_p(k, i)});
        if (i < nq) out.push_back({'q', i, indicator_q(k, i)});
    }
    return out;
}

void IndicatorTable::invalidate(std::vector<std::vector<double>>& rows, int k, int lo, int hi,
                                bool demand_anchor) {
    if (k >= static_cast<int>(rows.size()) || rows[k].empty()) return;
    const auto& idx = demand_anchor ? cd_ : cs_;
    lo = std::max(lo, 0);
    hi = std::min(hi, static_cast<int>(idx.size()) - 1);
    for (int i = lo; i <= hi; ++i) rows[k][idx[i]] = kAbsent;
}

void IndicatorTable::remove_span(int k0, int i0, char kind) {
    // Removed index ranges in current coordinates.
    const int sa = i0 + 1, sb = i0 + k0;  // supplies, both kinds
    const int da = (kind == 'p') ? i0 : i0 + 1;
    const int db = (kind == 'p') ? i0 + k0 - 1 : i0 + k0;
    if (sb > supply_count() - 1 || db > demand_count() - 1 || i0 < 0 || k0 < 1)
        throw std::out_of_range("remove_span");

    // A cached window dies iff it intersects the removed supplies or the
    // removed demands. Window extents relative to (i, i+k):
    //   D/Ip: supplies [i, i+k],   demands [i, i+k]
    //   S:    supplies [i+1, i+k], demands [i, i+k-1]
    //   Iq:   supplies [i+1, i+k+1], demands [i, i+k]
    struct Fam {
        std::vector<std::vector<double>>* rows;
        bool demand_anchor;
        int u1, u2;  // supply window [i+u1, i+k+u2]
        int w1, w2;  // demand window [i+w1, i+k+w2]
        int kmin;
    };
    Fam fams[] = {
        {&D_, false, 0, 0, 0, 0, 0},
        {&Ip_, false, 0, 0, 0, 0, 1},
        {&S_, true, 1, 0, 0, -1, 1},
        {&Iq_, true, 1, 1, 0, 0, 1},
    };
    for (const auto& f : fams) {
        for (int k = f.kmin; k < static_cast<int>(f.rows->size()); ++k) {
            invalidate(*f.rows, k, sa - k - f.u2, sb - f.u1, f.demand_anchor);
            invalidate(*f.rows, k, da - k - f.w2, db - f.w1, f.demand_anchor);
        }
    }

    cs_.erase(cs_.begin() + sa, cs_.begin() + sb + 1);
    cd_.erase(cd_.begin() + da, cd_.begin() + db + 1);
}

bool IndicatorTable::has_cached_p(int k, int i) const {
    return k < static_cast<int>(Ip_.size()) && i < supply_count() && present(Ip_[k], cs_[i]);
}

bool IndicatorTable::has_cached_q(int k, int i) const {
    return k < static_cast<int>(Iq_.size()) && i < demand_count() && present(Iq_[k], cd_[i]);
}

int IndicatorTable::cached_count_at_order(int k) const {
    const int n = demand_count();
    const int np = std::max(0, n - k);
    const int nq = std::max(0, balanced() ? n - k - 1 : n - k);
    int count = 0;
    for (int i = 0; i < np; ++i) count += has_cached_p(k, i) ? 1 : 0;
    for (int i = 0; i < nq; ++i) count += has_cached_q(k, i) ? 1 : 0;
    return count;
}

bool IndicatorTable::lower_lines_nonnegative(int k0) const {
    const int n = demand_count();
    for (int k = 1; k < k0; ++k) {
        const int np = std::max(0, n - k);
        const int nq = std::max(0, balanced() ? n - k - 1 : n - k);
        for (int i = 0; i < np; ++i)
            if (!has_cached_p(k, i) || Ip_[k][cs_[i]] < 0.0) return false;
        for (int i = 0; i < nq; ++i)
            if (!has_cached_q(k, i) || Iq_[k][cd_[i]] < 0.0) return false;
    }
    return true;
}

}  // namespace ot1d
