#include "bsca/workloads.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace bsca {

namespace {

location_id draw_location(const WorkloadSpec& spec, std::mt19937_64& rng) {
    if (spec.location_rule == LocationRule::fixed || spec.num_locations <= 1) {
        return spec.location_rule == LocationRule::fixed ? spec.fixed_location : 0;
    }
    std::uniform_int_distribution<int> pick(0, spec.num_locations - 1);
    return pick(rng);
}

file_id sample_categorical(std::span<const double> cumulative, double total,
                           std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, total);
    const double x = u(rng);
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
    if (it == cumulative.end()) --it;
    return static_cast<file_id>(it - cumulative.begin());
}

std::vector<Request> generate_iid(const WorkloadSpec& spec, std::span<const double> pmf) {
    std::vector<double> cumulative(pmf.size());
    double acc = 0.0;
    for (std::size_t n = 0; n < pmf.size(); ++n) {
        acc += pmf[n];
        cumulative[n] = acc;
    }
    std::mt19937_64 rng(spec.seed);
    std::vector<Request> out;
    out.reserve(spec.horizon);
    for (slot_t t = 1; t <= spec.horizon; ++t) {
        const file_id file = sample_categorical(cumulative, acc, rng);
        out.push_back({t, file, draw_location(spec, rng)});
    }
    return out;
}

struct Shot {
    file_id file;
    slot_t expires;  // last slot the shot is active
};

std::vector<Request> generate_shot_noise(const WorkloadSpec& spec) {
    if (spec.shot_lifespan < 1) throw std::invalid_argument("shot lifespan must be >= 1");
    if (spec.shot_rate < 0.0) throw std::invalid_argument("shot rate must be >= 0");

    std::mt19937_64 rng(spec.seed);
    const int files = spec.library_size;
    std::vector<int> active(files, 0);
    std::deque<Shot> shots;
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    auto spawn = [&](slot_t t) {
        // prefer files without an active shot, so new shots mean new content
        std::vector<file_id> idle;
        idle.reserve(files);
        for (file_id n = 0; n < files; ++n) {
            if (active[n] == 0) idle.push_back(n);
        }
        file_id target;
        if (!idle.empty()) {
            std::uniform_int_distribution<std::size_t> pick(0, idle.size() - 1);
            target = idle[pick(rng)];
        } else {
            std::uniform_int_distribution<int> pick(0, files - 1);
            target = pick(rng);
        }
        ++active[target];
        shots.push_back({target, t + spec.shot_lifespan - 1});
    };

    std::vector<double> weight(files);
    std::vector<double> cumulative(files);
    std::vector<Request> out;
    out.reserve(spec.horizon);

    for (int k = 0; k < spec.initial_shots; ++k) spawn(1);

    for (slot_t t = 1; t <= spec.horizon; ++t) {
        while (!shots.empty() && shots.front().expires < t) {
            --active[shots.front().file];
            shots.pop_front();
        }
        if (spec.shot_rate > 0.0 && coin(rng) < spec.shot_rate) spawn(t);

        double total = 0.0;
        for (file_id n = 0; n < files; ++n) {
            total += spec.shot_floor + spec.shot_intensity * active[n];
            cumulative[n] = total;
        }
        file_id file;
        if (total <= 0.0) {
            std::uniform_int_distribution<int> pick(0, files - 1);
            file = pick(rng);
        } else {
            file = sample_categorical(cumulative, total, rng);
        }
        out.push_back({t, file, draw_location(spec, rng)});
    }
    return out;
}

}  // namespace

std::vector<double> zipf_pmf(int library_size, double alpha) {
    if (library_size < 1) throw std::invalid_argument("library must be nonempty");
    if (alpha < 0.0) throw std::invalid_argument("zipf exponent must be >= 0");
    std::vector<double> pmf(library_size);
    double norm = 0.0;
    for (int n = 0; n < library_size; ++n) {
        pmf[n] = std::pow(static_cast<double>(n + 1), -alpha);
        norm += pmf[n];
    }
    for (double& p : pmf) p /= norm;
    return pmf;
}

std::vector<double> lb_adversary_pmf(std::span<const double> weights) {
    if (weights.empty()) throw std::invalid_argument("weight vector is empty");
    std::vector<double> pmf(weights.size());
    double norm = 0.0;
    for (std::size_t n = 0; n < weights.size(); ++n) {
        if (!(weights[n] > 0.0)) {
            throw std::invalid_argument("adversary weights must all be positive");
        }
        pmf[n] = 1.0 / weights[n];
        norm += pmf[n];
    }
    for (double& p : pmf) p /= norm;
    return pmf;
}

std::vector<Request> generate_requests(const WorkloadSpec& spec) {
    if (spec.kind == WorkloadKind::trace) {
        auto data = parse_trace(spec.trace_path, spec.trace_columns);
        return std::move(data.requests);
    }
    if (spec.library_size < 1) throw std::invalid_argument("library must be nonempty");
    if (spec.num_locations < 1) throw std::invalid_argument("need at least one location");
    if (spec.horizon < 0) throw std::invalid_argument("horizon must be >= 0");

    switch (spec.kind) {
        case WorkloadKind::zipf:
            return generate_iid(spec, zipf_pmf(spec.library_size, spec.zipf_alpha));
        case WorkloadKind::lb_adversary: {
            if (static_cast<int>(spec.adversary_weights.size()) != spec.library_size) {
                throw std::invalid_argument("adversary needs one weight per file");
            }
            return generate_iid(spec, lb_adversary_pmf(spec.adversary_weights));
        }
        case WorkloadKind::shot_noise:
            return generate_shot_noise(spec);
        default:
            throw std::invalid_argument("unknown workload kind");
    }
}

namespace {

bool parse_int_field(const std::string& field, long long& out) {
    if (field.empty()) return false;
    std::size_t pos = 0;
    try {
        out = std::stoll(field, &pos);
    } catch (const std::exception&) {
        return false;
    }
    return pos == field.size();
}

std::vector<std::string> split_csv_line(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
        // trim surrounding blanks
        const auto begin = field.find_first_not_of(" \t");
        const auto end = field.find_last_not_of(" \t");
        fields.push_back(begin == std::string::npos ? std::string()
                                                    : field.substr(begin, end - begin + 1));
    }
    return fields;
}

}  // namespace

TraceData parse_trace(const std::string& path, const TraceColumns& columns) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open trace file: " + path);

    TraceData data;
    std::unordered_map<long long, file_id> file_map;
    std::unordered_map<long long, location_id> location_map;

    std::string line;
    long line_number = 0;
    bool saw_record = false;
    while (std::getline(in, line)) {
        ++line_number;
        auto fields = split_csv_line(line);
        if (fields.empty() || (fields.size() == 1 && fields[0].empty())) continue;

        long long slot_raw = 0;
        long long file_raw = 0;
        const int required = std::max(columns.slot, columns.file) + 1;
        const bool numeric = static_cast<int>(fields.size()) >= required &&
                             parse_int_field(fields[columns.slot], slot_raw) &&
                             parse_int_field(fields[columns.file], file_raw);
        if (!numeric && !saw_record) continue;  // optional header row
        if (!numeric) {
            throw IoError("trace parse error at line " + std::to_string(line_number) + ": " +
                          path);
        }

        long long location_raw = 1;
        if (columns.location >= 0 && static_cast<int>(fields.size()) > columns.location) {
            if (!parse_int_field(fields[columns.location], location_raw)) {
                throw IoError("trace parse error at line " + std::to_string(line_number) +
                              ": bad location field");
            }
        }
        if (file_raw <= 0) {
            throw IoError("trace parse error at line " + std::to_string(line_number) +
                          ": file id out of range");
        }
        if (location_raw <= 0) {
            throw IoError("trace parse error at line " + std::to_string(line_number) +
                          ": location id out of range");
        }

        auto [fit, f_new] = file_map.try_emplace(file_raw,
                                                 static_cast<file_id>(file_map.size()));
        auto [lit, l_new] = location_map.try_emplace(location_raw,
                                                     static_cast<location_id>(location_map.size()));
        saw_record = true;
        data.requests.push_back({static_cast<slot_t>(data.requests.size() + 1), fit->second,
                                 lit->second});
    }

    data.library_size = static_cast<int>(file_map.size());
    data.num_locations = std::max<int>(1, static_cast<int>(location_map.size()));
    data.horizon = static_cast<slot_t>(data.requests.size());
    return data;
}

}  // namespace bsca
