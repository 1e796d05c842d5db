#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "bsca/workloads.hpp"

using namespace bsca;

namespace {

std::vector<long> file_histogram(std::span<const Request> requests, int files) {
    std::vector<long> counts(files, 0);
    for (const Request& req : requests) ++counts[req.file];
    return counts;
}

// binomial three-sigma band check for an empirical count
bool within_3sigma(long count, double p, long trials) {
    const double mean = p * trials;
    const double sigma = std::sqrt(trials * p * (1.0 - p));
    return std::abs(count - mean) <= 3.0 * sigma + 1e-9;
}

struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const std::string& contents) {
        path = std::filesystem::temp_directory_path() /
               ("bsca_trace_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)) + ".csv");
        std::ofstream out(path, std::ios::binary);
        out << contents;
    }
    ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("pmf helpers are normalized to machine precision") {
    const auto zipf = zipf_pmf(100, 0.8);
    CHECK(std::abs(std::accumulate(zipf.begin(), zipf.end(), 0.0) - 1.0) <= 1e-12);
    const std::vector<double> w = {1.0, 2.0, 0.5};
    const auto adv = lb_adversary_pmf(w);
    CHECK(std::abs(std::accumulate(adv.begin(), adv.end(), 0.0) - 1.0) <= 1e-12);
}

TEST_CASE("a one-file library produces a constant stream") {
    WorkloadSpec spec;
    spec.kind = WorkloadKind::zipf;
    spec.library_size = 1;
    spec.horizon = 50;
    spec.seed = 5;
    for (const Request& req : generate_requests(spec)) {
        CHECK(req.file == 0);
        CHECK(req.location == 0);
    }
}

TEST_CASE("zipf with zero exponent is uniform") {
    WorkloadSpec spec;
    spec.kind = WorkloadKind::zipf;
    spec.library_size = 20;
    spec.zipf_alpha = 0.0;
    spec.horizon = 100000;
    spec.seed = 21;
    const auto requests = generate_requests(spec);
    const auto counts = file_histogram(requests, 20);
    for (long c : counts) CHECK(within_3sigma(c, 1.0 / 20, spec.horizon));
}

TEST_CASE("zipf frequencies follow the analytic pmf") {
    WorkloadSpec spec;
    spec.kind = WorkloadKind::zipf;
    spec.library_size = 100;
    spec.zipf_alpha = 0.8;
    spec.horizon = 100000;
    spec.seed = 22;
    const auto requests = generate_requests(spec);
    const auto counts = file_histogram(requests, 100);
    const auto pmf = zipf_pmf(100, 0.8);
    CHECK(within_3sigma(counts[0], pmf[0], spec.horizon));

    // chi-square goodness of fit, 99 degrees of freedom
    double chi2 = 0.0;
    for (int n = 0; n < 100; ++n) {
        const double expected = pmf[n] * spec.horizon;
        chi2 += (counts[n] - expected) * (counts[n] - expected) / expected;
    }
    CHECK(chi2 < 99.0 + 3.0 * std::sqrt(2.0 * 99.0));
}

TEST_CASE("requests cover one slot each and draw locations uniformly") {
    WorkloadSpec spec;
    spec.kind = WorkloadKind::zipf;
    spec.library_size = 10;
    spec.num_locations = 4;
    spec.horizon = 40000;
    spec.seed = 23;
    const auto requests = generate_requests(spec);
    REQUIRE(static_cast<slot_t>(requests.size()) == spec.horizon);
    std::vector<long> locations(4, 0);
    for (std::size_t t = 0; t < requests.size(); ++t) {
        CHECK(requests[t].slot == static_cast<slot_t>(t + 1));
        ++locations[requests[t].location];
    }
    for (long c : locations) CHECK(within_3sigma(c, 0.25, spec.horizon));
}

TEST_CASE("the adversary distribution inverts the weights") {
    WorkloadSpec spec;
    spec.kind = WorkloadKind::lb_adversary;
    spec.library_size = 2;
    spec.adversary_weights = {1.0, 2.0};
    spec.horizon = 100000;
    spec.seed = 24;
    const auto pmf = lb_adversary_pmf(spec.adversary_weights);
    CHECK(pmf[0] == doctest::Approx(2.0 / 3));
    CHECK(pmf[1] == doctest::Approx(1.0 / 3));
    const auto counts = file_histogram(generate_requests(spec), 2);
    CHECK(within_3sigma(counts[0], 2.0 / 3, spec.horizon));
}

TEST_CASE("equal adversary weights mean uniform requests") {
    const auto pmf = lb_adversary_pmf(std::vector<double>{3.0, 3.0, 3.0});
    for (double p : pmf) CHECK(p == doctest::Approx(1.0 / 3));
}

TEST_CASE("degenerate and invalid adversary inputs") {
    WorkloadSpec spec;
    spec.kind = WorkloadKind::lb_adversary;
    spec.library_size = 1;
    spec.adversary_weights = {2.0};
    spec.horizon = 10;
    for (const Request& req : generate_requests(spec)) CHECK(req.file == 0);

    CHECK_THROWS_AS(lb_adversary_pmf(std::vector<double>{1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("a lone shot dominates until it expires") {
    WorkloadSpec spec;
    spec.kind = WorkloadKind::shot_noise;
    spec.library_size = 30;
    spec.horizon = 4000;
    spec.shot_rate = 0.0;
    spec.shot_lifespan = 2000;
    spec.shot_floor = 0.0;
    spec.initial_shots = 1;
    spec.seed = 31;
    const auto requests = generate_requests(spec);
    const file_id hot = requests.front().file;
    for (slot_t t = 0; t < 2000; ++t) CHECK(requests[t].file == hot);

    // afterwards the floor takes over: uniform across the library
    std::vector<long> tail(30, 0);
    for (slot_t t = 2000; t < 4000; ++t) ++tail[requests[t].file];
    int seen = 0;
    for (long c : tail) seen += c > 0;
    CHECK(seen > 15);
}

TEST_CASE("two simultaneous shots split the traffic evenly") {
    WorkloadSpec spec;
    spec.kind = WorkloadKind::shot_noise;
    spec.library_size = 40;
    spec.horizon = 20000;
    spec.shot_rate = 0.0;
    spec.shot_lifespan = 20000;
    spec.shot_floor = 0.0;
    spec.initial_shots = 2;
    spec.seed = 32;
    const auto requests = generate_requests(spec);
    const auto counts = file_histogram(requests, 40);
    std::vector<long> active;
    for (long c : counts) {
        if (c > 0) active.push_back(c);
    }
    REQUIRE(active.size() == 2);
    CHECK(within_3sigma(active[0], 0.5, spec.horizon));
}

TEST_CASE("expired shots fall back to the floor frequency") {
    WorkloadSpec spec;
    spec.kind = WorkloadKind::shot_noise;
    spec.library_size = 20;
    spec.horizon = 30000;
    spec.shot_rate = 0.0;
    spec.shot_lifespan = 1000;
    spec.shot_floor = 1e-6;
    spec.initial_shots = 1;
    spec.seed = 33;
    const auto requests = generate_requests(spec);
    const file_id hot = requests.front().file;
    long post_expiry = 0;
    for (slot_t t = 1000; t < 30000; ++t) post_expiry += requests[t].file == hot;
    // all weights equal the floor after expiry, so the file is 1-in-20
    CHECK(within_3sigma(post_expiry, 1.0 / 20, 29000));
}

TEST_CASE("generators are pure functions of spec and seed") {
    WorkloadSpec spec;
    spec.kind = WorkloadKind::shot_noise;
    spec.library_size = 25;
    spec.horizon = 5000;
    spec.seed = 34;
    spec.initial_shots = 1;
    CHECK(generate_requests(spec) == generate_requests(spec));
    WorkloadSpec other = spec;
    other.seed = 35;
    CHECK(generate_requests(spec) != generate_requests(other));
}

TEST_CASE("traces parse, densify and report dimensions") {
    TempFile trace("slot,file,location\n1,17,2\n2,99,1\n3,17,2\n");
    const auto data = parse_trace(trace.path.string());
    CHECK(data.library_size == 2);
    CHECK(data.num_locations == 2);
    CHECK(data.horizon == 3);
    CHECK(data.requests[0].file == 0);
    CHECK(data.requests[1].file == 1);
    CHECK(data.requests[2].file == 0);
    CHECK(data.requests[0].location == data.requests[2].location);
    CHECK(data.requests[0].slot == 1);
    CHECK(data.requests[2].slot == 3);
}

TEST_CASE("traces without a location column default to one location") {
    TempFile trace("1,5\n2,6\n");
    const auto data = parse_trace(trace.path.string());
    CHECK(data.num_locations == 1);
    CHECK(data.requests[0].location == 0);
    CHECK(data.library_size == 2);
}

TEST_CASE("malformed trace lines name the offending line") {
    TempFile trace("1,5,1\n2,not_a_number,1\n");
    CHECK_THROWS_WITH_AS(parse_trace(trace.path.string()), doctest::Contains("line 2"),
                         IoError);

    TempFile missing("1,5,1\n3\n");
    CHECK_THROWS_WITH_AS(parse_trace(missing.path.string()), doctest::Contains("line 2"),
                         IoError);

    TempFile bad_location("1,5,0\n");
    CHECK_THROWS_WITH_AS(parse_trace(bad_location.path.string()),
                         doctest::Contains("location id out of range"), IoError);

    CHECK_THROWS_AS(parse_trace("/nonexistent/path.csv"), IoError);
}

TEST_CASE("windows line endings are accepted") {
    TempFile trace("1,4,1\r\n2,4,2\r\n");
    const auto data = parse_trace(trace.path.string());
    CHECK(data.horizon == 2);
    CHECK(data.library_size == 1);
    CHECK(data.num_locations == 2);
}
