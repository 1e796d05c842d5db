#include "bsca/projection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bsca {

namespace {

constexpr double kEdgeTol = 1e-12;  // boundary comparisons; avoids oscillation on exact 0/1

enum : std::uint8_t { kPartial = 0, kFull = 1, kEvicted = 2 };

struct TightState {
    std::vector<std::uint8_t> member;
    double partial_sum = 0.0;
    int partial_count = 0;
    int full_count = 0;
};

// Water-filling loop with a fixed fully-cached set. Entries whose tentative
// allocation q - rho/2 goes negative are evicted; the multiplier is
// nondecreasing across passes, so the loop ends after at most N of them.
// Returns the converged multiplier.
double run_partial_loop(std::span<const double> q, int capacity, TightState& st, int& passes) {
    const int n = static_cast<int>(q.size());
    double rho = 0.0;
    bool changed = true;
    while (changed) {
        changed = false;
        ++passes;
        if (passes > 2 * n + 4) {
            throw std::logic_error("cache projection failed to converge");
        }
        rho = 2.0 * (st.full_count - capacity + st.partial_sum) / st.partial_count;
        const double level = rho / 2.0;
        for (int k = 0; k < n; ++k) {
            if (st.member[k] != kPartial) continue;
            if (q[k] - level < -kEdgeTol) {
                st.member[k] = kEvicted;
                st.partial_sum -= q[k];
                --st.partial_count;
                changed = true;
            }
        }
    }
    return rho;
}

}  // namespace

void project_cache_inplace(std::span<double> q, int capacity, ProjectionStats* stats) {
    const int n = static_cast<int>(q.size());
    if (capacity < 1 || capacity >= n) {
        throw std::invalid_argument("projection needs 1 <= capacity < library size");
    }

    ProjectionStats local;
    ProjectionStats& st_out = stats ? *stats : local;
    st_out.passes = 0;

    double clip_sum = 0.0;
    for (double v : q) clip_sum += std::clamp(v, 0.0, 1.0);
    if (clip_sum <= capacity + kEdgeTol) {
        // capacity constraint slack at the optimum: box projection suffices
        for (double& v : q) v = std::clamp(v, 0.0, 1.0);
        return;
    }

    TightState st;
    st.member.assign(n, kPartial);
    for (double v : q) st.partial_sum += v;
    st.partial_count = n;

    double rho = run_partial_loop(q, capacity, st, st_out.passes);

    // The box cap can bind for at most one index, the single entry of q
    // allowed above 1. Pin it and rerun.
    double tentative_max = -1.0;
    int spike = -1;
    for (int k = 0; k < n; ++k) {
        if (st.member[k] == kPartial && q[k] > tentative_max) {
            tentative_max = q[k];
            spike = k;
        }
    }
    if (spike >= 0 && tentative_max - rho / 2.0 > 1.0 + kEdgeTol) {
        st.member.assign(n, kPartial);
        st.member[spike] = kFull;
        st.partial_sum = 0.0;
        for (int k = 0; k < n; ++k) {
            if (k != spike) st.partial_sum += q[k];
        }
        st.partial_count = n - 1;
        st.full_count = 1;
        rho = run_partial_loop(q, capacity, st, st_out.passes);
    }

    const double level = rho / 2.0;
    for (int k = 0; k < n; ++k) {
        switch (st.member[k]) {
            case kFull:
                q[k] = 1.0;
                break;
            case kEvicted:
                q[k] = 0.0;
                break;
            default:
                q[k] = std::clamp(q[k] - level, 0.0, 1.0);
                break;
        }
    }
}

std::vector<double> project_cache(std::vector<double> q, int capacity, ProjectionStats* stats) {
    project_cache_inplace(q, capacity, stats);
    return q;
}

Matrix project_all(Matrix q, const Topology& top, ProjectionStats* stats) {
    if (q.rows() != top.library_size || q.cols() != top.num_caches) {
        throw std::invalid_argument("projection input shape does not match the topology");
    }
    int max_passes = 0;
    for (int j = 0; j < q.cols(); ++j) {
        ProjectionStats col_stats;
        project_cache_inplace(q.col(j), top.capacities[j], &col_stats);
        max_passes = std::max(max_passes, col_stats.passes);
    }
    if (stats) stats->passes = max_passes;
    return q;
}

}  // namespace bsca
