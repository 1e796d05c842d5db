#include "bsca/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "bsca/bsca_policy.hpp"
#include "bsca/projection.hpp"
#include "bsca/routing.hpp"

namespace bsca {

LruCache::LruCache(int capacity) : capacity_(capacity) {
    if (capacity < 1) throw std::invalid_argument("cache capacity must be positive");
}

bool LruCache::step(file_id file) {
    auto it = position_.find(file);
    if (it != position_.end()) {
        recency_.splice(recency_.begin(), recency_, it->second);
        return true;
    }
    recency_.push_front(file);
    position_[file] = recency_.begin();
    if (static_cast<int>(recency_.size()) > capacity_) {
        position_.erase(recency_.back());
        recency_.pop_back();
    }
    return false;
}

std::vector<file_id> LruCache::contents_sorted() const {
    std::vector<file_id> out;
    out.reserve(position_.size());
    for (const auto& [file, it] : position_) out.push_back(file);
    std::sort(out.begin(), out.end());
    return out;
}

LfuCache::LfuCache(int capacity) : capacity_(capacity) {
    if (capacity < 1) throw std::invalid_argument("cache capacity must be positive");
}

bool LfuCache::step(file_id file) {
    ++counts_[file];
    if (cached_.count(file) != 0) return true;
    if (static_cast<int>(cached_.size()) >= capacity_) {
        // evict the least frequently requested cached file, ties toward the
        // lower id
        file_id victim = -1;
        std::int64_t victim_count = 0;
        for (const auto& [f, unused] : cached_) {
            const std::int64_t c = counts_.at(f);
            if (victim < 0 || c < victim_count || (c == victim_count && f < victim)) {
                victim = f;
                victim_count = c;
            }
        }
        cached_.erase(victim);
    }
    cached_[file] = 1;
    return false;
}

std::vector<file_id> LfuCache::contents_sorted() const {
    std::vector<file_id> out;
    out.reserve(cached_.size());
    for (const auto& [file, unused] : cached_) out.push_back(file);
    std::sort(out.begin(), out.end());
    return out;
}

std::int64_t LfuCache::count(file_id file) const {
    auto it = counts_.find(file);
    return it == counts_.end() ? 0 : it->second;
}

MlruPolicy::MlruPolicy(const Topology& top, std::uint64_t seed) : top_(top), rng_(seed) {
    caches_.reserve(top.num_caches);
    for (int j = 0; j < top.num_caches; ++j) caches_.emplace_back(top.capacities[j]);
}

MlruPolicy::Result MlruPolicy::serve(const Request& req, const UtilityModel::View& w,
                                     bool lazy, double q) {
    Result result;
    int best = -1;
    double best_weight = -1.0;
    std::vector<int> reachable;
    reachable.reserve(4);
    for (int j = 0; j < top_.num_caches; ++j) {
        if (!top_.reaches(req.location, j)) continue;
        reachable.push_back(j);
        if (caches_[j].contains(req.file)) {
            const double weight = w.weight(req.file, req.location, j);
            if (weight > best_weight) {
                best_weight = weight;
                best = j;
            }
        }
    }
    if (best >= 0) {
        caches_[best].step(req.file);  // refresh recency at the serving cache
        result.utility = best_weight;
        result.hit = true;
        return result;
    }
    // miss: served by the MBS at zero utility
    if (reachable.empty()) return result;
    if (lazy) {
        if (q <= 0.0) return result;
        if (q < 1.0) {
            std::uniform_real_distribution<double> coin(0.0, 1.0);
            if (coin(rng_) >= q) return result;
        }
    }
    std::uniform_int_distribution<std::size_t> pick(0, reachable.size() - 1);
    caches_[reachable[pick(rng_)]].step(req.file);
    return result;
}

MlruPolicy::Result MlruPolicy::step(const Request& req, const UtilityModel::View& w) {
    return serve(req, w, false, 1.0);
}

QlruLazyPolicy::QlruLazyPolicy(const Topology& top, std::uint64_t seed, double q)
    : MlruPolicy(top, seed), q_(q) {
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("q must lie in [0, 1]");
}

QlruLazyPolicy::Result QlruLazyPolicy::step(const Request& req, const UtilityModel::View& w) {
    return serve(req, w, true, q_);
}

namespace {

struct AggregatedGroup {
    Request representative;
    int stage = 0;
    double count = 0.0;
};

std::vector<AggregatedGroup> aggregate_log(std::span<const Request> requests,
                                           const UtilityModel& w) {
    std::unordered_map<std::uint64_t, AggregatedGroup> groups;
    for (const Request& req : requests) {
        const int stage = w.stage_of(req.slot);
        const std::uint64_t key =
            (static_cast<std::uint64_t>(stage) << 42) |
            (static_cast<std::uint64_t>(req.location) << 21) |
            static_cast<std::uint64_t>(req.file);
        auto [it, inserted] = groups.try_emplace(key);
        if (inserted) {
            it->second.representative = req;
            it->second.stage = stage;
        }
        it->second.count += 1.0;
    }
    std::vector<AggregatedGroup> out;
    out.reserve(groups.size());
    for (auto& [key, g] : groups) out.push_back(std::move(g));
    std::sort(out.begin(), out.end(), [](const AggregatedGroup& a, const AggregatedGroup& b) {
        if (a.stage != b.stage) return a.stage < b.stage;
        if (a.representative.file != b.representative.file) {
            return a.representative.file < b.representative.file;
        }
        return a.representative.location < b.representative.location;
    });
    return out;
}

double aggregated_utility(const Matrix& y, std::span<const AggregatedGroup> groups,
                          const Topology& top, const UtilityModel& w) {
    double total = 0.0;
    for (const auto& g : groups) {
        total += g.count * route(g.representative, y, top, w.stage_view(g.stage)).utility;
    }
    return total;
}

// Per-cache rounding of a fractional iterate to the nearest full-file
// vertex; the true optimum often sits there.
Matrix round_to_vertex(const Matrix& y, const Topology& top) {
    Matrix out(y.rows(), y.cols(), 0.0);
    std::vector<int> order(y.rows());
    for (int j = 0; j < y.cols(); ++j) {
        auto col = y.col(j);
        for (int n = 0; n < y.rows(); ++n) order[n] = n;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (col[a] != col[b]) return col[a] > col[b];
            return a < b;
        });
        for (int k = 0; k < top.capacities[j]; ++k) out(order[k], j) = 1.0;
    }
    return out;
}

}  // namespace

HindsightSolution hindsight_single_cache(std::span<const Request> requests,
                                         const UtilityModel& w, int capacity) {
    if (w.num_caches() != 1) {
        throw std::invalid_argument("single-cache benchmark needs a one-cache utility model");
    }
    const int files = w.library_size();
    std::vector<double> score(files, 0.0);
    for (const Request& req : requests) {
        score[req.file] += w.at(req.slot).weight(req.file, req.location, 0);
    }
    std::vector<int> order(files);
    for (int n = 0; n < files; ++n) order[n] = n;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (score[a] != score[b]) return score[a] > score[b];
        return a < b;
    });

    HindsightSolution sol;
    sol.method = "exact-single-cache";
    sol.y = Matrix(files, 1, 0.0);
    for (int k = 0; k < capacity && k < files; ++k) {
        sol.y(order[k], 0) = 1.0;
        sol.total_utility += score[order[k]];
    }
    return sol;
}

HindsightSolution hindsight_network(std::span<const Request> requests, const Topology& top,
                                    const UtilityModel& w, HindsightOptions options) {
    HindsightSolution sol;
    sol.method = "offline-ascent";
    sol.y = feasible_initial_cache(top, InitialFill::uniform);
    if (requests.empty()) {
        sol.total_utility = 0.0;
        return sol;
    }

    const auto groups = aggregate_log(requests, w);
    const auto constants = compute_constants(top, w);

    Matrix y = sol.y;
    double best_value = aggregated_utility(y, groups, top, w);
    Matrix best = y;

    long k = 1;
    for (int pass = 0; pass < options.passes; ++pass) {
        Matrix average(top.library_size, top.num_caches, 0.0);
        int averaged = 0;
        for (int it = 0; it < options.iterations; ++it, ++k) {
            // aggregated ascent direction: counts times the per-request duals
            Matrix grad(top.library_size, top.num_caches, 0.0);
            double grad_sq = 0.0;
            for (const auto& g : groups) {
                const auto outcome = route(g.representative, y, top, w.stage_view(g.stage));
                for (const auto& share : outcome.shares) {
                    if (share.beta == 0.0) continue;
                    grad(g.representative.file, share.cache) += g.count * share.beta;
                }
            }
            for (int j = 0; j < grad.cols(); ++j) {
                for (double v : grad.col(j)) grad_sq += v * v;
            }
            if (grad_sq < 1e-24) break;
            const double eta =
                constants.diameter / (std::sqrt(grad_sq) * std::sqrt(static_cast<double>(k)));
            for (int j = 0; j < y.cols(); ++j) {
                auto yc = y.col(j);
                auto gc = grad.col(j);
                for (int n = 0; n < y.rows(); ++n) yc[n] += eta * gc[n];
                project_cache_inplace(yc, top.capacities[j]);
            }
            const double value = aggregated_utility(y, groups, top, w);
            if (value > best_value) {
                best_value = value;
                best = y;
            }
            for (int j = 0; j < y.cols(); ++j) {
                auto ac = average.col(j);
                auto yc = y.col(j);
                for (int n = 0; n < y.rows(); ++n) ac[n] += yc[n];
            }
            ++averaged;
        }
        if (averaged > 0) {
            for (int j = 0; j < average.cols(); ++j) {
                for (double& v : average.col(j)) v /= averaged;
            }
            const double value = aggregated_utility(average, groups, top, w);
            if (value > best_value) {
                best_value = value;
                best = average;
            }
        }
        y = best;  // restart the next pass from the incumbent
    }

    const Matrix rounded = round_to_vertex(best, top);
    const double rounded_value = aggregated_utility(rounded, groups, top, w);
    if (rounded_value > best_value) {
        best_value = rounded_value;
        best = rounded;
    }

    sol.y = std::move(best);
    sol.total_utility = best_value;
    return sol;
}

double static_configuration_utility(const Matrix& y, std::span<const Request> requests,
                                    const Topology& top, const UtilityModel& w) {
    const auto groups = aggregate_log(requests, w);
    return aggregated_utility(y, groups, top, w);
}

}  // namespace bsca
