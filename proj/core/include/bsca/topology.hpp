#pragma once

#include <string>
#include <vector>

#include "bsca/types.hpp"

namespace bsca {

/// Bipartite cache network: I user locations, J finite caches, a library of
/// N unit-size files. The MBS (stores everything, zero utility) is implicit
/// and therefore not part of the reachability matrix.
struct Topology {
    int num_locations = 0;               // I
    int num_caches = 0;                  // J
    int library_size = 0;                // N
    std::vector<int> capacities;         // C_j, length J, each in [1, N)
    std::vector<std::uint8_t> reachable; // l_ij, row-major I x J

    bool reaches(int location, int cache) const {
        return reachable[static_cast<std::size_t>(location) * num_caches + cache] != 0;
    }

    /// Number of caches reachable from `location`.
    int location_degree(int location) const;

    /// deg = max_i |{j : l_ij = 1}|. Zero-degree locations are legal.
    int degree() const;

    int max_capacity() const;

    /// Fully connected topology with the given per-cache capacities.
    static Topology full(int locations, int caches, int library, std::vector<int> capacities);
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Report-style check of all structural invariants (dimensions, capacity
/// bounds, matrix shape). Never throws.
ValidationReport validate_topology(const Topology& top);

enum class InitialFill {
    uniform,   // y^{n,j} = C_j / N for every file
    top_index, // files 0..C_j-1 cached entirely
};

/// Feasible starting configuration with every cache exactly full, so the
/// capacity constraint is tight from the first slot onward.
Matrix feasible_initial_cache(const Topology& top, InitialFill fill = InitialFill::uniform);

/// True when y is inside the feasible caching set: entries in [0,1] and
/// per-cache sums within capacity, all up to `tol`.
bool satisfies_cache_constraints(const Matrix& y, const Topology& top, double tol = 1e-9);

}  // namespace bsca
