#include "bsca/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace bsca {

std::vector<RegretPoint> regret_series(std::span<const double> slot_utilities,
                                       std::span<const std::pair<slot_t, double>> hindsight,
                                       RegretMode mode) {
    if (mode == RegretMode::none) return {};
    const slot_t horizon = static_cast<slot_t>(slot_utilities.size());
    std::vector<RegretPoint> out;
    out.reserve(hindsight.size());
    slot_t cursor = 0;
    double cumulative = 0.0;
    slot_t previous = 0;
    for (const auto& [t, benchmark] : hindsight) {
        if (t < 1 || t > horizon || t <= previous) {
            throw std::invalid_argument("checkpoints must be increasing and within the series");
        }
        previous = t;
        while (cursor < t) cumulative += slot_utilities[cursor++];
        RegretPoint point;
        point.t = t;
        point.regret = benchmark - cumulative;
        point.rate = point.regret / static_cast<double>(t);
        out.push_back(point);
    }
    return out;
}

std::vector<slot_t> checkpoint_slots(slot_t horizon) {
    std::vector<slot_t> out;
    for (slot_t t = 1; t < horizon; t *= 2) out.push_back(t);
    if (horizon > 0 && (out.empty() || out.back() != horizon)) out.push_back(horizon);
    return out;
}

namespace {

void append_number(std::string& out, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    out += buf;
}

}  // namespace

std::string to_csv(const MetricsSeries& series) {
    const bool with_benchmark = !series.hindsight_values.empty();
    std::string out;

    out += "slot,is_checkpoint";
    for (const auto& p : series.policies) {
        out += ',' + p.name + "_utility," + p.name + "_cum_utility," + p.name + "_hit," +
               p.name + "_hit_ratio," + p.name + "_avg_utility";
    }
    if (with_benchmark) {
        out += ",best_static_utility";
        for (const auto& p : series.policies) {
            out += ',' + p.name + "_regret," + p.name + "_regret_per_slot";
        }
        out += ",bound_upper,bound_lower";
    }
    out += '\n';

    std::vector<double> cum_utility(series.policies.size(), 0.0);
    std::vector<double> cum_hit(series.policies.size(), 0.0);
    std::vector<std::size_t> regret_cursor(series.policies.size(), 0);
    std::size_t checkpoint_cursor = 0;

    for (slot_t t = 1; t <= series.horizon; ++t) {
        const bool checkpoint = checkpoint_cursor < series.checkpoints.size() &&
                                series.checkpoints[checkpoint_cursor] == t;
        out += std::to_string(t);
        out += checkpoint ? ",1" : ",0";
        for (std::size_t p = 0; p < series.policies.size(); ++p) {
            const auto& track = series.policies[p];
            const double u = track.utility[t - 1];
            cum_utility[p] += u;
            cum_hit[p] += track.hit[t - 1];
            out += ',';
            append_number(out, u);
            out += ',';
            append_number(out, cum_utility[p]);
            out += ',';
            append_number(out, track.hit[t - 1]);
            out += ',';
            append_number(out, cum_hit[p] / t);
            out += ',';
            append_number(out, cum_utility[p] / t);
        }
        if (with_benchmark) {
            if (checkpoint) {
                out += ',';
                append_number(out, series.hindsight_values[checkpoint_cursor]);
                for (std::size_t p = 0; p < series.policies.size(); ++p) {
                    const auto& regret = series.policies[p].regret;
                    auto& cursor = regret_cursor[p];
                    out += ',';
                    if (cursor < regret.size() && regret[cursor].t == t) {
                        append_number(out, regret[cursor].regret);
                        out += ',';
                        append_number(out, regret[cursor].rate);
                        ++cursor;
                    } else {
                        out += ',';
                    }
                }
                out += ',';
                if (checkpoint_cursor < series.bound_upper.size()) {
                    append_number(out, series.bound_upper[checkpoint_cursor]);
                }
                out += ',';
                if (checkpoint_cursor < series.bound_lower.size() &&
                    !std::isnan(series.bound_lower[checkpoint_cursor])) {
                    append_number(out, series.bound_lower[checkpoint_cursor]);
                }
            } else {
                out += ',';  // best_static_utility
                for (std::size_t p = 0; p < series.policies.size(); ++p) out += ",,";
                out += ",,";  // bounds
            }
        }
        if (checkpoint) ++checkpoint_cursor;
        out += '\n';
    }
    return out;
}

}  // namespace bsca
