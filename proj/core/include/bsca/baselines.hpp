#pragma once

#include <cstdint>
#include <list>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "bsca/topology.hpp"
#include "bsca/types.hpp"
#include "bsca/utility_model.hpp"

namespace bsca {

/// Classic LRU over whole files, single cache. Starts empty and fills up
/// before evicting.
class LruCache {
public:
    explicit LruCache(int capacity);

    /// Returns true on hit; on miss inserts the file, evicting the least
    /// recently used one if full.
    bool step(file_id file);

    bool contains(file_id file) const { return position_.count(file) != 0; }
    std::vector<file_id> contents_sorted() const;
    int size() const { return static_cast<int>(recency_.size()); }

private:
    int capacity_;
    std::list<file_id> recency_;  // front = most recent
    std::unordered_map<file_id, std::list<file_id>::iterator> position_;
};

/// LFU with frequency counters over the full request history. On a miss the
/// new file is inserted and the least frequently requested cached file is
/// evicted; count ties evict the lower file id.
class LfuCache {
public:
    explicit LfuCache(int capacity);

    bool step(file_id file);

    bool contains(file_id file) const { return cached_.count(file) != 0; }
    std::vector<file_id> contents_sorted() const;
    std::int64_t count(file_id file) const;

private:
    int capacity_;
    std::unordered_map<file_id, std::int64_t> counts_;  // full history
    std::unordered_map<file_id, char> cached_;
};

/// Multi-cache LRU: a request found in some reachable cache is served from
/// the holder with the highest utility (refreshing recency there); a miss is
/// served by the MBS and the file is inserted into one reachable cache
/// picked uniformly at random.
class MlruPolicy {
public:
    MlruPolicy(const Topology& top, std::uint64_t seed);

    struct Result {
        double utility = 0.0;
        bool hit = false;
    };

    Result step(const Request& req, const UtilityModel::View& w);

    const LruCache& cache(int j) const { return caches_[j]; }

protected:
    Result serve(const Request& req, const UtilityModel::View& w, bool lazy, double q);

    Topology top_;
    std::vector<LruCache> caches_;
    std::mt19937_64 rng_;
};

/// q-LRU with the lazy rule: as mLRU, but a miss triggers an insertion only
/// when no reachable cache holds the file, and then only with probability q.
class QlruLazyPolicy : public MlruPolicy {
public:
    QlruLazyPolicy(const Topology& top, std::uint64_t seed, double q = 1.0);

    Result step(const Request& req, const UtilityModel::View& w);

private:
    double q_;
};

struct HindsightSolution {
    Matrix y;  // N x J
    double total_utility = 0.0;
    std::string method;
};

/// Exact best static single-cache configuration: cache the C files with the
/// largest total accrued weight (weight times request count for static
/// utilities); ties resolved toward lower file ids. Assumes the standard
/// single-cache setting where every request can reach the cache.
HindsightSolution hindsight_single_cache(std::span<const Request> requests,
                                         const UtilityModel& w, int capacity);

struct HindsightOptions {
    int iterations = 300;  // ascent steps per pass
    int passes = 4;
};

/// Best static configuration for a cache network, found by offline projected
/// supergradient ascent on the aggregated request log with per-pass
/// averaging; returns the best iterate seen, so the objective is
/// nondecreasing across passes.
HindsightSolution hindsight_network(std::span<const Request> requests, const Topology& top,
                                    const UtilityModel& w,
                                    HindsightOptions options = {});

/// Total utility of a fixed configuration over a request log.
double static_configuration_utility(const Matrix& y, std::span<const Request> requests,
                                    const Topology& top, const UtilityModel& w);

}  // namespace bsca
