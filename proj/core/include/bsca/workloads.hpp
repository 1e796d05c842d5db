#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bsca/types.hpp"

namespace bsca {

enum class WorkloadKind {
    zipf,         // i.i.d. requests with a Zipf popularity law
    shot_noise,   // transient per-file popularity shots
    lb_adversary, // i.i.d. with P(file n) proportional to 1 / w^n
    trace,        // CSV request trace
};

enum class LocationRule {
    uniform_random,
    fixed,
};

struct TraceColumns {
    int slot = 0;
    int file = 1;
    int location = 2;  // set to -1 when the trace has no location column
};

struct WorkloadSpec {
    WorkloadKind kind = WorkloadKind::zipf;
    int library_size = 0;
    int num_locations = 1;
    slot_t horizon = 0;
    std::uint64_t seed = 1;

    double zipf_alpha = 0.8;

    double shot_rate = 0.01;      // new-shot probability per slot
    slot_t shot_lifespan = 5000;  // slots a shot stays active
    double shot_intensity = 1.0;
    double shot_floor = 1e-6;     // request weight of files with no shot
    int initial_shots = 0;

    std::vector<double> adversary_weights;  // per-file, all > 0

    std::string trace_path;
    TraceColumns trace_columns;

    LocationRule location_rule = LocationRule::uniform_random;
    location_id fixed_location = 0;
};

/// Materialized request sequence: exactly one request per slot, a pure
/// function of (spec, seed). Throws std::invalid_argument on bad parameters
/// and IoError for trace problems.
std::vector<Request> generate_requests(const WorkloadSpec& spec);

/// P(file n) = n^-alpha normalized, ranks 1..N mapped onto ids 0..N-1.
std::vector<double> zipf_pmf(int library_size, double alpha);

/// P(file n) = (1/w^n) / sum_m (1/w^m). Any nonpositive weight throws.
std::vector<double> lb_adversary_pmf(std::span<const double> weights);

struct TraceData {
    std::vector<Request> requests;
    int library_size = 0;   // distinct files after densification
    int num_locations = 0;  // distinct locations (1 when absent)
    slot_t horizon = 0;
};

/// Parses `slot,file_id,location_id` records (header optional, location
/// column optional) and densifies raw ids in first-appearance order.
/// Malformed lines raise IoError naming the line number.
TraceData parse_trace(const std::string& path, const TraceColumns& columns = {});

}  // namespace bsca
