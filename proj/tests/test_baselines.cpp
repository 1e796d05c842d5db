#include <doctest.h>

#include <random>

#include "bsca/baselines.hpp"
#include "bsca/workloads.hpp"
#include "support/oracles.hpp"

using namespace bsca;
namespace oracle = bsca::testing;

TEST_CASE("lru evicts the least recently used file") {
    LruCache cache(2);
    CHECK_FALSE(cache.step(1));
    CHECK_FALSE(cache.step(2));
    CHECK_FALSE(cache.step(3));  // evicts 1
    CHECK_FALSE(cache.step(1));  // evicts 2
    CHECK(cache.contents_sorted() == std::vector<file_id>{1, 3});
}

TEST_CASE("lru hits refresh recency without churn") {
    LruCache cache(2);
    cache.step(1);
    cache.step(2);
    CHECK(cache.step(1));
    CHECK(cache.contents_sorted() == std::vector<file_id>{1, 2});
    cache.step(3);  // 2 is now the least recent
    CHECK(cache.contents_sorted() == std::vector<file_id>{1, 3});
}

TEST_CASE("lru with room for everything never evicts") {
    LruCache cache(4);
    for (file_id f : {1, 2, 3}) cache.step(f);
    for (file_id f : {1, 2, 3}) CHECK(cache.step(f));
}

TEST_CASE("lru matches the replay oracle on random streams") {
    std::mt19937_64 rng(5501);
    for (int trial = 0; trial < 50; ++trial) {
        const int capacity = 1 + static_cast<int>(rng() % 6);
        std::vector<file_id> stream(300);
        for (file_id& f : stream) f = static_cast<file_id>(rng() % 12);
        std::vector<file_id> expected_contents;
        const auto expected = oracle::oracle_lru_replay(stream, capacity, &expected_contents);

        LruCache cache(capacity);
        for (std::size_t t = 0; t < stream.size(); ++t) {
            CHECK(cache.step(stream[t]) == expected[t]);
        }
        CHECK(cache.contents_sorted() == expected_contents);
    }
}

TEST_CASE("lfu evicts the least frequent file") {
    LfuCache cache(2);
    CHECK_FALSE(cache.step(1));
    CHECK(cache.step(1));
    CHECK_FALSE(cache.step(2));
    CHECK_FALSE(cache.step(3));  // counts: 1 has 2, 2 has 1 -> evict 2
    CHECK(cache.contents_sorted() == std::vector<file_id>{1, 3});
}

TEST_CASE("lfu ties evict the lower file id") {
    LfuCache cache(2);
    cache.step(1);
    cache.step(2);
    cache.step(3);  // all counts equal, file 1 leaves
    CHECK(cache.contents_sorted() == std::vector<file_id>{2, 3});
}

TEST_CASE("a single repeated file stays cached forever") {
    LfuCache cache(2);
    CHECK_FALSE(cache.step(5));
    for (int t = 0; t < 10; ++t) CHECK(cache.step(5));
}

TEST_CASE("lfu matches the replay oracle on random streams") {
    std::mt19937_64 rng(5502);
    for (int trial = 0; trial < 30; ++trial) {
        const int capacity = 1 + static_cast<int>(rng() % 5);
        std::vector<file_id> stream(160);
        for (file_id& f : stream) f = static_cast<file_id>(rng() % 9);
        std::vector<file_id> expected_contents;
        const auto expected = oracle::oracle_lfu_replay(stream, capacity, &expected_contents);

        LfuCache cache(capacity);
        for (std::size_t t = 0; t < stream.size(); ++t) {
            CHECK(cache.step(stream[t]) == expected[t]);
        }
        CHECK(cache.contents_sorted() == expected_contents);
    }
}

namespace {

Topology two_cache_topology() {
    return Topology::full(1, 2, 6, {2, 2});
}

}  // namespace

TEST_CASE("mlru serves from the highest-utility holder") {
    // side locations see one cache each; the middle location sees both
    Topology top = Topology::full(3, 2, 6, {2, 2});
    top.reachable = {1, 0, 0, 1, 1, 1};
    const auto model = UtilityModel::uniform_per_cache(6, 3, {2.0, 100.0});
    MlruPolicy policy(top, 42);
    policy.step({1, 0, 0}, model.at(1));  // miss, lands in cache 0
    policy.step({2, 0, 1}, model.at(1));  // miss, lands in cache 1
    REQUIRE(policy.cache(0).contains(0));
    REQUIRE(policy.cache(1).contains(0));

    const auto result = policy.step({3, 0, 2}, model.at(1));
    CHECK(result.hit);
    CHECK(result.utility == doctest::Approx(100.0));
}

TEST_CASE("a miss with one reachable cache inserts there") {
    Topology top = two_cache_topology();
    top.reachable = {1, 0};  // only cache 0 visible
    const auto model = UtilityModel::uniform_per_cache(6, 1, {2.0, 100.0});
    MlruPolicy policy(top, 1);
    const auto result = policy.step({1, 3, 0}, model.at(1));
    CHECK_FALSE(result.hit);
    CHECK(result.utility == 0.0);
    CHECK(policy.cache(0).contains(3));
    CHECK_FALSE(policy.cache(1).contains(3));
}

TEST_CASE("zero-degree locations leave mlru untouched") {
    Topology top = two_cache_topology();
    top.reachable = {0, 0};
    const auto model = UtilityModel::uniform_per_cache(6, 1, {2.0, 100.0});
    MlruPolicy policy(top, 1);
    const auto result = policy.step({1, 3, 0}, model.at(1));
    CHECK_FALSE(result.hit);
    CHECK(result.utility == 0.0);
    CHECK_FALSE(policy.cache(0).contains(3));
    CHECK_FALSE(policy.cache(1).contains(3));
}

TEST_CASE("the lazy rule skips insertion when any holder exists") {
    const Topology top = two_cache_topology();
    const auto model = UtilityModel::uniform_per_cache(6, 1, {2.0, 100.0});
    QlruLazyPolicy policy(top, 9);
    policy.step({1, 0, 0}, model.at(1));  // miss, inserted somewhere
    const bool in0 = policy.cache(0).contains(0);
    const auto result = policy.step({1, 0, 0}, model.at(1));  // hit, lazy: no copy
    CHECK(result.hit);
    CHECK(policy.cache(0).contains(0) == in0);
    CHECK(policy.cache(1).contains(0) == !in0);
}

TEST_CASE("lazy insertion happens when nothing reachable holds the file") {
    const Topology top = two_cache_topology();
    const auto model = UtilityModel::uniform_per_cache(6, 1, {2.0, 100.0});
    QlruLazyPolicy policy(top, 9);
    policy.step({1, 4, 0}, model.at(1));
    CHECK((policy.cache(0).contains(4) || policy.cache(1).contains(4)));
}

TEST_CASE("q = 0 freezes the caches") {
    const Topology top = two_cache_topology();
    const auto model = UtilityModel::uniform_per_cache(6, 1, {2.0, 100.0});
    QlruLazyPolicy policy(top, 9, 0.0);
    for (int t = 0; t < 20; ++t) {
        const auto result = policy.step({t + 1, static_cast<file_id>(t % 6), 0}, model.at(1));
        CHECK_FALSE(result.hit);
    }
    CHECK(policy.cache(0).contents_sorted().empty());
    CHECK(policy.cache(1).contents_sorted().empty());
}

TEST_CASE("the single-cache benchmark picks the best weighted counts") {
    const auto model = UtilityModel::per_file({1.0, 2.0, 1.0});
    std::vector<Request> requests;
    slot_t t = 1;
    for (int k = 0; k < 5; ++k) requests.push_back({t++, 0, 0});
    for (int k = 0; k < 3; ++k) requests.push_back({t++, 1, 0});
    for (int k = 0; k < 2; ++k) requests.push_back({t++, 2, 0});

    const auto sol = hindsight_single_cache(requests, model, 1);
    CHECK(sol.total_utility == doctest::Approx(6.0));
    CHECK(sol.y(1, 0) == 1.0);
    CHECK(sol.y(0, 0) == 0.0);
    CHECK(sol.method == "exact-single-cache");
}

TEST_CASE("equal weights reduce the benchmark to top counts") {
    const auto model = UtilityModel::per_file({1.0, 1.0, 1.0, 1.0});
    std::vector<Request> requests;
    slot_t t = 1;
    for (int k = 0; k < 4; ++k) requests.push_back({t++, 2, 0});
    for (int k = 0; k < 2; ++k) requests.push_back({t++, 0, 0});
    requests.push_back({t++, 1, 0});
    const auto sol = hindsight_single_cache(requests, model, 2);
    CHECK(sol.y(2, 0) == 1.0);
    CHECK(sol.y(0, 0) == 1.0);
    CHECK(sol.total_utility == doctest::Approx(6.0));
}

TEST_CASE("caching everything collects every weighted request") {
    const auto model = UtilityModel::per_file({1.0, 3.0});
    std::vector<Request> requests = {{1, 0, 0}, {2, 1, 0}, {3, 1, 0}};
    const auto sol = hindsight_single_cache(requests, model, 2);
    CHECK(sol.total_utility == doctest::Approx(7.0));
}

TEST_CASE("network and single-cache benchmarks agree on one cache") {
    std::mt19937_64 rng(5503);
    for (int trial = 0; trial < 20; ++trial) {
        const int files = 12 + static_cast<int>(rng() % 8);
        const int capacity = 2 + static_cast<int>(rng() % 4);
        const Topology top = Topology::full(1, 1, files, {capacity});
        std::vector<double> weights(files);
        std::uniform_real_distribution<double> w_dist(0.5, 5.0);
        for (double& w : weights) w = w_dist(rng);
        const auto model = UtilityModel::per_file(weights);

        WorkloadSpec spec;
        spec.kind = WorkloadKind::zipf;
        spec.library_size = files;
        spec.horizon = 800;
        spec.seed = rng();
        const auto requests = generate_requests(spec);

        const auto exact = hindsight_single_cache(requests, model, capacity);
        const auto ascent = hindsight_network(requests, top, model);
        CHECK(ascent.total_utility >=
              exact.total_utility * 0.995);  // within half a percent
        CHECK(ascent.total_utility <= exact.total_utility * 1.0 + 1e-6);
    }
}

TEST_CASE("a single hot file lands fully on the best cache") {
    Topology top = Topology::full(1, 2, 5, {1, 1});
    const auto model = UtilityModel::uniform_per_cache(5, 1, {1.0, 10.0});
    std::vector<Request> requests;
    for (slot_t t = 1; t <= 50; ++t) requests.push_back({t, 3, 0});
    const auto sol = hindsight_network(requests, top, model);
    CHECK(sol.y(3, 1) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(sol.total_utility == doctest::Approx(500.0).epsilon(1e-6));
}

TEST_CASE("the ascent benchmark matches the exhaustive grid on toys") {
    std::mt19937_64 rng(5504);
    for (int trial = 0; trial < 15; ++trial) {
        oracle::RandomTopologyOptions opts;
        opts.max_locations = 2;
        opts.max_caches = 2;
        opts.min_library = 3;
        opts.max_library = 6;
        Topology top = oracle::random_topology(rng, opts);
        for (int& c : top.capacities) c = std::min(c, 2);
        const UtilityModel model = oracle::random_utility(top, rng, 10.0);

        WorkloadSpec spec;
        spec.kind = WorkloadKind::zipf;
        spec.library_size = top.library_size;
        spec.num_locations = top.num_locations;
        spec.horizon = 200;
        spec.seed = rng();
        const auto requests = generate_requests(spec);

        const double grid = oracle::oracle_grid_hindsight(requests, top, model);
        const auto ascent = hindsight_network(requests, top, model);
        if (grid > 0.0) {
            CHECK(std::abs(ascent.total_utility - grid) <= 0.01 * grid);
        }
    }
}

TEST_CASE("popular files concentrate on the high-utility cache") {
    // asymmetric utilities: an efficient static configuration packs the
    // popular files onto the cache worth 100 per request
    const Topology top = Topology::full(4, 3, 40, {5, 5, 5});
    const auto model = UtilityModel::uniform_per_cache(40, 4, {1.0, 2.0, 100.0});
    WorkloadSpec spec;
    spec.kind = WorkloadKind::zipf;
    spec.library_size = 40;
    spec.num_locations = 4;
    spec.zipf_alpha = 0.8;
    spec.horizon = 4000;
    spec.seed = 71;
    const auto requests = generate_requests(spec);

    const auto sol = hindsight_network(requests, top, model);
    CHECK(satisfies_cache_constraints(sol.y, top, 1e-9));
    double top_mass_best_cache = 0.0;
    double top_mass_others = 0.0;
    for (int n = 0; n < 5; ++n) {  // the five most popular files
        top_mass_best_cache += sol.y(n, 2);
        top_mass_others += sol.y(n, 0) + sol.y(n, 1);
    }
    CHECK(top_mass_best_cache >= 4.5);  // nearly the full capacity
    CHECK(top_mass_best_cache > top_mass_others);
}

TEST_CASE("more passes never lose benchmark utility") {
    std::mt19937_64 rng(5505);
    Topology top = Topology::full(2, 2, 10, {2, 3});
    const UtilityModel model = oracle::random_utility(top, rng, 5.0);
    WorkloadSpec spec;
    spec.kind = WorkloadKind::zipf;
    spec.library_size = 10;
    spec.num_locations = 2;
    spec.horizon = 500;
    spec.seed = 99;
    const auto requests = generate_requests(spec);

    double previous = 0.0;
    for (int passes = 1; passes <= 4; ++passes) {
        HindsightOptions options;
        options.iterations = 60;
        options.passes = passes;
        const auto sol = hindsight_network(requests, top, model, options);
        CHECK(sol.total_utility >= previous - 1e-9);
        previous = sol.total_utility;
    }
}

TEST_CASE("static replay utility sums the per-slot routing values") {
    Topology top = Topology::full(1, 2, 4, {1, 1});
    const auto model = UtilityModel::uniform_per_cache(4, 1, {1.0, 3.0});
    Matrix y(4, 2, 0.0);
    y(0, 0) = 1.0;
    y(1, 1) = 1.0;
    std::vector<Request> requests = {{1, 0, 0}, {2, 1, 0}, {3, 2, 0}, {4, 0, 0}};
    CHECK(static_configuration_utility(y, requests, top, model) ==
          doctest::Approx(1.0 + 3.0 + 0.0 + 1.0));
}
