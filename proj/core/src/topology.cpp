#include "bsca/topology.hpp"

#include <algorithm>
#include <cmath>

namespace bsca {

int Topology::location_degree(int location) const {
    int deg = 0;
    for (int j = 0; j < num_caches; ++j) {
        if (reaches(location, j)) ++deg;
    }
    return deg;
}

int Topology::degree() const {
    int deg = 0;
    for (int i = 0; i < num_locations; ++i) {
        deg = std::max(deg, location_degree(i));
    }
    return deg;
}

int Topology::max_capacity() const {
    int c = 0;
    for (int cj : capacities) c = std::max(c, cj);
    return c;
}

Topology Topology::full(int locations, int caches, int library, std::vector<int> capacities) {
    Topology top;
    top.num_locations = locations;
    top.num_caches = caches;
    top.library_size = library;
    top.capacities = std::move(capacities);
    top.reachable.assign(static_cast<std::size_t>(locations) * caches, 1);
    return top;
}

ValidationReport validate_topology(const Topology& top) {
    ValidationReport report;
    auto add = [&report](std::string msg) { report.violations.push_back(std::move(msg)); };

    if (top.library_size < 1) add("library must contain at least one file");
    if (top.num_locations < 1) add("at least one user location required");
    if (top.num_caches < 1) add("at least one cache required");

    if (static_cast<int>(top.capacities.size()) != top.num_caches) {
        add("capacity vector length " + std::to_string(top.capacities.size()) +
            " does not match cache count " + std::to_string(top.num_caches));
    } else {
        for (int j = 0; j < top.num_caches; ++j) {
            if (top.capacities[j] < 1) {
                add("cache " + std::to_string(j + 1) + ": capacity must be positive");
            } else if (top.library_size >= 1 && top.capacities[j] >= top.library_size) {
                add("cache " + std::to_string(j + 1) + ": capacity must be < library size");
            }
        }
    }

    const std::size_t expected =
        static_cast<std::size_t>(std::max(top.num_locations, 0)) *
        static_cast<std::size_t>(std::max(top.num_caches, 0));
    if (top.reachable.size() != expected) {
        add("reachability matrix has " + std::to_string(top.reachable.size()) +
            " entries, expected " + std::to_string(expected));
    }
    return report;
}

Matrix feasible_initial_cache(const Topology& top, InitialFill fill) {
    const int n = top.library_size;
    const int j_count = top.num_caches;
    Matrix y(n, j_count, 0.0);
    for (int j = 0; j < j_count; ++j) {
        const int cap = top.capacities[j];
        auto col = y.col(j);
        if (fill == InitialFill::uniform) {
            const double v = static_cast<double>(cap) / n;
            std::fill(col.begin(), col.end(), v);
        } else {
            std::fill(col.begin(), col.begin() + cap, 1.0);
        }
    }
    return y;
}

bool satisfies_cache_constraints(const Matrix& y, const Topology& top, double tol) {
    if (y.rows() != top.library_size || y.cols() != top.num_caches) return false;
    for (int j = 0; j < y.cols(); ++j) {
        double sum = 0.0;
        for (double v : y.col(j)) {
            if (v < -tol || v > 1.0 + tol || !std::isfinite(v)) return false;
            sum += v;
        }
        if (sum > top.capacities[j] + tol) return false;
    }
    return true;
}

}  // namespace bsca
