#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_set>

#include "bsca/experiment.hpp"

namespace bsca {

namespace {

struct RawSection {
    std::string name;
    std::vector<std::pair<std::string, std::string>> entries;
};

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<RawSection> parse_sections(const std::string& text) {
    std::vector<RawSection> sections;
    std::istringstream in(text);
    std::string line;
    long line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("line " + std::to_string(line_number) +
                                  ": unterminated section header");
            }
            sections.push_back({trim(line.substr(1, line.size() - 2)), {}});
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_number) + ": expected key = value");
        }
        if (sections.empty()) {
            throw ConfigError("line " + std::to_string(line_number) +
                              ": key outside of any section");
        }
        sections.back().entries.emplace_back(trim(line.substr(0, eq)),
                                             trim(line.substr(eq + 1)));
    }
    return sections;
}

class SectionReader {
public:
    explicit SectionReader(const RawSection* section) : section_(section) {}

    bool present() const { return section_ != nullptr; }

    std::optional<std::string> get(const std::string& key) {
        consumed_.insert(key);
        if (!section_) return std::nullopt;
        for (const auto& [k, v] : section_->entries) {
            if (k == key) return v;
        }
        return std::nullopt;
    }

    std::string require(const std::string& key) {
        auto v = get(key);
        if (!v) {
            const std::string where = section_ ? "[" + section_->name + "] " : "";
            throw ConfigError(where + "missing required key '" + key + "'");
        }
        return *v;
    }

    void finish() const {
        if (!section_) return;
        for (const auto& [k, v] : section_->entries) {
            if (consumed_.count(k) == 0) {
                throw ConfigError("[" + section_->name + "] unknown key '" + k + "'");
            }
        }
    }

private:
    const RawSection* section_;
    std::unordered_set<std::string> consumed_;
};

long long to_int(const std::string& v, const std::string& what) {
    try {
        std::size_t pos = 0;
        const long long out = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw ConfigError("expected an integer for " + what + ", got '" + v + "'");
    }
}

double to_double(const std::string& v, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double out = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw ConfigError("expected a number for " + what + ", got '" + v + "'");
    }
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<double> to_double_list(const std::string& v, const std::string& what) {
    std::vector<double> out;
    for (const auto& item : split_list(v)) out.push_back(to_double(item, what));
    return out;
}

Topology build_topology(SectionReader& sec) {
    Topology top;
    top.num_locations = static_cast<int>(to_int(sec.require("locations"), "locations"));
    top.num_caches = static_cast<int>(to_int(sec.require("caches"), "caches"));
    top.library_size = static_cast<int>(to_int(sec.require("library"), "library"));

    if (auto caps = sec.get("capacities")) {
        for (const auto& item : split_list(*caps)) {
            top.capacities.push_back(static_cast<int>(to_int(item, "capacities")));
        }
    } else if (auto cap = sec.get("capacity")) {
        top.capacities.assign(top.num_caches, static_cast<int>(to_int(*cap, "capacity")));
    } else {
        throw ConfigError("[topology] needs 'capacity' or 'capacities'");
    }

    const std::string reach = sec.get("reachable").value_or("full");
    if (reach == "full") {
        top.reachable.assign(
            static_cast<std::size_t>(top.num_locations) * top.num_caches, 1);
    } else {
        // semicolon-separated rows of 0/1 characters, one row per location
        for (char c : reach) {
            if (c == '0' || c == '1') {
                top.reachable.push_back(c == '1');
            } else if (c != ';' && c != ' ' && c != ',') {
                throw ConfigError("[topology] reachable: unexpected character '" +
                                  std::string(1, c) + "'");
            }
        }
    }

    auto report = validate_topology(top);
    if (!report.ok()) throw ConfigError("[topology] " + report.violations.front());
    return top;
}

std::vector<double> load_numeric_file(const std::string& path, int columns) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open file: " + path);
    std::vector<double> out;
    std::string line;
    long line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        const auto fields = split_list(line);
        if (static_cast<int>(fields.size()) != columns) {
            throw IoError(path + " line " + std::to_string(line_number) + ": expected " +
                          std::to_string(columns) + " comma-separated fields");
        }
        for (const auto& f : fields) out.push_back(to_double(f, path));
    }
    return out;
}

UtilityModel build_utility_stage(SectionReader& sec, const Topology& top) {
    const int files = top.library_size;
    const int locations = top.num_locations;
    const int caches = top.num_caches;

    if (auto per_cache = sec.get("per_cache")) {
        auto values = to_double_list(*per_cache, "per_cache");
        if (static_cast<int>(values.size()) != caches) {
            throw ConfigError("[utility] per_cache needs one value per cache");
        }
        return UtilityModel::uniform_per_cache(files, locations, std::move(values));
    }
    if (auto per_file = sec.get("per_file")) {
        auto values = to_double_list(*per_file, "per_file");
        if (static_cast<int>(values.size()) != files) {
            throw ConfigError("[utility] per_file needs one value per file");
        }
        if (caches != 1 || locations != 1) {
            throw ConfigError("[utility] per_file requires a single-cache topology");
        }
        return UtilityModel::per_file(std::move(values));
    }
    if (auto matrix_file = sec.get("matrix_file")) {
        // records n,i,j,w with 1-based indices; unlisted entries stay zero
        auto flat = load_numeric_file(*matrix_file, 4);
        std::vector<double> dense(
            static_cast<std::size_t>(files) * locations * caches, 0.0);
        for (std::size_t k = 0; k < flat.size(); k += 4) {
            const int n = static_cast<int>(flat[k]) - 1;
            const int i = static_cast<int>(flat[k + 1]) - 1;
            const int j = static_cast<int>(flat[k + 2]) - 1;
            if (n < 0 || n >= files || i < 0 || i >= locations || j < 0 || j >= caches) {
                throw ConfigError("[utility] matrix_file index outside the topology");
            }
            dense[(static_cast<std::size_t>(n) * locations + i) * caches + j] = flat[k + 3];
        }
        return UtilityModel::full(files, locations, caches, std::move(dense));
    }
    auto cach_file = sec.get("cach_file");
    auto rout_file = sec.get("rout_file");
    if (cach_file && rout_file) {
        auto cach = load_numeric_file(*cach_file, 3);  // n,j,w
        auto rout = load_numeric_file(*rout_file, 3);  // i,j,w
        Matrix a(files, caches, 0.0);
        Matrix b(locations, caches, 0.0);
        for (std::size_t k = 0; k < cach.size(); k += 3) {
            const int n = static_cast<int>(cach[k]) - 1;
            const int j = static_cast<int>(cach[k + 1]) - 1;
            if (n < 0 || n >= files || j < 0 || j >= caches) {
                throw ConfigError("[utility] cach_file index outside the topology");
            }
            a(n, j) = cach[k + 2];
        }
        for (std::size_t k = 0; k < rout.size(); k += 3) {
            const int i = static_cast<int>(rout[k]) - 1;
            const int j = static_cast<int>(rout[k + 1]) - 1;
            if (i < 0 || i >= locations || j < 0 || j >= caches) {
                throw ConfigError("[utility] rout_file index outside the topology");
            }
            b(i, j) = rout[k + 2];
        }
        return UtilityModel::factored(std::move(a), std::move(b));
    }
    throw ConfigError(
        "[utility] needs per_cache, per_file, matrix_file, or cach_file + rout_file");
}

WorkloadSpec build_workload(SectionReader& sec, const Topology& top) {
    WorkloadSpec spec;
    spec.library_size = top.library_size;
    spec.num_locations = top.num_locations;

    const std::string kind = sec.require("kind");
    if (kind == "zipf") {
        spec.kind = WorkloadKind::zipf;
    } else if (kind == "shot-noise") {
        spec.kind = WorkloadKind::shot_noise;
    } else if (kind == "lb-adversary") {
        spec.kind = WorkloadKind::lb_adversary;
    } else if (kind == "trace") {
        spec.kind = WorkloadKind::trace;
    } else {
        throw ConfigError("[workload] unknown kind '" + kind + "'");
    }

    if (spec.kind == WorkloadKind::trace) {
        spec.trace_path = sec.require("path");
    } else {
        spec.horizon = to_int(sec.require("T"), "T");
        if (spec.horizon < 0) throw ConfigError("[workload] T must be >= 0");
    }
    if (auto v = sec.get("seed")) spec.seed = static_cast<std::uint64_t>(to_int(*v, "seed"));
    else spec.seed = 0;  // derived from the run seed later
    if (auto v = sec.get("alpha")) spec.zipf_alpha = to_double(*v, "alpha");
    if (auto v = sec.get("rate")) spec.shot_rate = to_double(*v, "rate");
    if (auto v = sec.get("lifespan")) spec.shot_lifespan = to_int(*v, "lifespan");
    if (auto v = sec.get("intensity")) spec.shot_intensity = to_double(*v, "intensity");
    if (auto v = sec.get("floor")) spec.shot_floor = to_double(*v, "floor");
    if (auto v = sec.get("initial_shots")) {
        spec.initial_shots = static_cast<int>(to_int(*v, "initial_shots"));
    }
    if (auto v = sec.get("weights")) {
        if (*v == "uniform") {
            spec.adversary_weights.assign(top.library_size, 1.0);
        } else {
            spec.adversary_weights = to_double_list(*v, "weights");
        }
    }
    if (auto v = sec.get("location")) {
        if (*v == "uniform") {
            spec.location_rule = LocationRule::uniform_random;
        } else if (v->rfind("fixed:", 0) == 0) {
            spec.location_rule = LocationRule::fixed;
            spec.fixed_location =
                static_cast<location_id>(to_int(v->substr(6), "location") - 1);
        } else {
            throw ConfigError("[workload] location must be 'uniform' or 'fixed:<i>'");
        }
    }
    return spec;
}

StepMode parse_schedule(const std::string& v) {
    if (v == "fixed") return StepMode::fixed;
    if (v == "diminishing") return StepMode::diminishing;
    if (v == "doubling") return StepMode::doubling;
    throw ConfigError("unknown schedule '" + v + "'");
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    const auto sections = parse_sections(text);
    auto find = [&sections](const std::string& name) -> const RawSection* {
        for (const auto& s : sections) {
            if (s.name == name) return &s;
        }
        return nullptr;
    };

    static const std::unordered_set<std::string> known_prefixes = {
        "topology", "utility", "utility.stage", "workload", "run", "reconfig", "hindsight"};
    for (const auto& s : sections) {
        if (known_prefixes.count(s.name) == 0 && s.name.rfind("policy.", 0) != 0) {
            throw ConfigError("unknown section [" + s.name + "]");
        }
    }

    ExperimentConfig config;

    SectionReader topology_sec(find("topology"));
    if (!topology_sec.present()) throw ConfigError("missing [topology] section");
    config.topology = build_topology(topology_sec);
    topology_sec.finish();

    SectionReader utility_sec(find("utility"));
    if (!utility_sec.present()) throw ConfigError("missing [utility] section");
    config.utility = build_utility_stage(utility_sec, config.topology);
    utility_sec.finish();

    for (const auto& s : sections) {
        if (s.name != "utility.stage") continue;
        SectionReader stage_sec(&s);
        const slot_t from = to_int(stage_sec.require("from"), "from");
        config.utility.append_stage(from, build_utility_stage(stage_sec, config.topology));
        stage_sec.finish();
    }

    SectionReader workload_sec(find("workload"));
    if (!workload_sec.present()) throw ConfigError("missing [workload] section");
    config.workload = build_workload(workload_sec, config.topology);
    workload_sec.finish();

    SectionReader run_sec(find("run"));
    if (!run_sec.present()) throw ConfigError("missing [run] section");
    for (const auto& name : split_list(run_sec.require("policies"))) {
        PolicyInstanceSpec p;
        p.name = name;
        config.policies.push_back(std::move(p));
    }
    if (auto v = run_sec.get("seed")) {
        config.seed = static_cast<std::uint64_t>(to_int(*v, "seed"));
    }
    if (auto v = run_sec.get("regret")) {
        if (*v == "none") config.regret_mode = RegretMode::none;
        else if (*v == "at-T") config.regret_mode = RegretMode::hindsight_at_horizon;
        else if (*v == "up-to-t") config.regret_mode = RegretMode::hindsight_up_to_t;
        else throw ConfigError("[run] regret must be none, at-T or up-to-t");
    }
    if (auto v = run_sec.get("out")) config.output_path = *v;
    run_sec.finish();

    for (auto& policy : config.policies) {
        SectionReader policy_sec(find("policy." + policy.name));
        if (auto v = policy_sec.get("schedule")) policy.bsca_schedule = parse_schedule(*v);
        if (auto v = policy_sec.get("q")) policy.qlru_q = to_double(*v, "q");
        policy_sec.finish();
    }

    SectionReader reconfig_sec(find("reconfig"));
    if (reconfig_sec.present()) {
        config.reconfig_cost = to_double(reconfig_sec.require("cost"), "cost");
    }
    reconfig_sec.finish();

    SectionReader hindsight_sec(find("hindsight"));
    if (auto v = hindsight_sec.get("iterations")) {
        config.hindsight_options.iterations = static_cast<int>(to_int(*v, "iterations"));
    }
    if (auto v = hindsight_sec.get("passes")) {
        config.hindsight_options.passes = static_cast<int>(to_int(*v, "passes"));
    }
    hindsight_sec.finish();

    validate_experiment(config);
    return config;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

}  // namespace bsca
