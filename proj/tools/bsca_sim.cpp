// bsca-sim: experiment runner and utilities for the caching simulator.
//
// Subcommands:
//   run         execute an experiment config and emit per-slot CSV metrics
//   bounds      print closed-form regret bounds for given parameters
//   trace-check validate a request trace and report its dimensions
//   project     project a vector onto one capped simplex (debugging aid)

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bsca/bsca.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::optional<std::string>& out_override,
            const std::optional<std::uint64_t>& seed_override) {
    bsca::ExperimentConfig config = bsca::load_config(config_path);
    if (seed_override) config.seed = *seed_override;
    if (out_override) config.output_path = *out_override;

    const bsca::MetricsSeries series = bsca::run_experiment(config);
    const std::string csv = bsca::to_csv(series);

    if (config.output_path.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(config.output_path, std::ios::binary);
        if (!out) throw bsca::IoError("cannot write output file: " + config.output_path);
        out << csv;
        if (!out) throw bsca::IoError("failed writing output file: " + config.output_path);
    }

    // short per-policy summary on stderr so the CSV stays clean on stdout
    std::vector<double> totals(series.policies.size(), 0.0);
    for (std::size_t p = 0; p < series.policies.size(); ++p) {
        for (double u : series.policies[p].utility) totals[p] += u;
    }
    for (std::size_t p = 0; p < series.policies.size(); ++p) {
        std::fprintf(stderr, "%-12s total utility %.6f", series.policies[p].name.c_str(),
                     totals[p]);
        if (series.horizon > 0) {
            std::fprintf(stderr, "  (avg %.6f)", totals[p] / series.horizon);
        }
        std::fprintf(stderr, "\n");
    }
    return 0;
}

int cmd_bounds(const std::string& json_params) {
    nlohmann::json params;
    try {
        params = nlohmann::json::parse(json_params);
    } catch (const nlohmann::json::exception& e) {
        throw bsca::ConfigError(std::string("bad JSON parameters: ") + e.what());
    }

    bool printed = false;
    try {
        if (params.contains("J") && params.contains("deg") && params.contains("C") &&
            params.contains("w1") && params.contains("T")) {
            bsca::BoundInputs in;
            in.num_caches = params.at("J").get<int>();
            in.degree = params.at("deg").get<int>();
            in.capacity = params.at("C").get<int>();
            in.max_weight = params.at("w1").get<double>();
            in.horizon = params.at("T").get<double>();
            std::printf("upper_bsca %.2f\n", bsca::regret_upper_bound(in));
            printed = true;
        }
        if (params.contains("delta2") && params.contains("K") && params.contains("T")) {
            std::printf("upper_diminishing %.2f\n",
                        bsca::regret_upper_bound_diminishing(params.at("delta2").get<double>(),
                                                             params.at("K").get<double>(),
                                                             params.at("T").get<double>()));
            printed = true;
        }
        if (params.contains("N") && params.contains("C") && params.contains("T") &&
            params.contains("w") && params.at("w").is_number()) {
            std::printf("lower_uniform %.2f\n",
                        bsca::regret_lower_bound_uniform(params.at("w").get<double>(),
                                                         params.at("N").get<int>(),
                                                         params.at("C").get<int>(),
                                                         params.at("T").get<double>()));
            printed = true;
        }
        if (params.contains("weights") && params.contains("C") && params.contains("T")) {
            const auto weights = params.at("weights").get<std::vector<double>>();
            std::printf("lower_weighted %.6f\n",
                        bsca::regret_lower_bound_weighted(weights, params.at("C").get<int>(),
                                                          params.at("T").get<double>()));
            printed = true;
        }
    } catch (const std::invalid_argument& e) {
        throw bsca::ConfigError(e.what());
    } catch (const nlohmann::json::exception& e) {
        throw bsca::ConfigError(std::string("bad JSON parameters: ") + e.what());
    }
    if (!printed) {
        throw bsca::ConfigError(
            "no bound selected; provide {J,deg,C,w1,T}, {delta2,K,T}, {N,C,T,w} or "
            "{weights,C,T}");
    }
    return 0;
}

int cmd_trace_check(const std::string& path) {
    const bsca::TraceData data = bsca::parse_trace(path);
    std::printf("files %d\nlocations %d\nrequests %lld\n", data.library_size,
                data.num_locations, static_cast<long long>(data.horizon));
    return 0;
}

int cmd_project(int n, int capacity, const std::string& csv) {
    std::vector<double> q;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            q.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw bsca::ConfigError("bad vector entry '" + item + "'");
        }
    }
    if (n > 0 && n != static_cast<int>(q.size())) {
        throw bsca::ConfigError("--n does not match the vector length");
    }
    try {
        q = bsca::project_cache(std::move(q), capacity);
    } catch (const std::invalid_argument& e) {
        throw bsca::ConfigError(e.what());
    }
    for (std::size_t k = 0; k < q.size(); ++k) {
        std::printf("%s%.10g", k == 0 ? "" : ",", q[k]);
    }
    std::printf("\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bipartite cache network simulator"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run an experiment config");
    std::string config_path;
    std::optional<std::string> out_override;
    std::optional<std::uint64_t> seed_override;
    run->add_option("--config", config_path, "experiment config file")->required();
    run->add_option("--out", out_override, "CSV output path (default from config, else stdout)");
    run->add_option("--seed", seed_override, "override the run seed");

    auto* bounds = app.add_subcommand("bounds", "evaluate closed-form regret bounds");
    std::string json_params;
    bounds->add_option("--json", json_params, "bound parameters as inline JSON")->required();

    auto* trace_check = app.add_subcommand("trace-check", "validate a request trace");
    std::string trace_path;
    trace_check->add_option("path", trace_path, "trace file")->required();

    auto* project = app.add_subcommand("project", "project a vector onto a capped simplex");
    int project_n = 0;
    int project_c = 0;
    std::string project_q;
    project->add_option("--n", project_n, "expected vector length (optional)");
    project->add_option("--c", project_c, "cache capacity")->required();
    project->add_option("--q", project_q, "comma-separated vector")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the message and usage
        return 1;
    }

    try {
        if (run->parsed()) return cmd_run(config_path, out_override, seed_override);
        if (bounds->parsed()) return cmd_bounds(json_params);
        if (trace_check->parsed()) return cmd_trace_check(trace_path);
        if (project->parsed()) return cmd_project(project_n, project_c, project_q);
    } catch (const bsca::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const bsca::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
