#pragma once

#include <vector>

#include "bsca/types.hpp"

namespace bsca {

/// Per-(file, location, cache) utility weights w^{n,i,j}, optionally varying
/// over time as a sequence of stages. Serving from the MBS always yields
/// zero utility, so MBS weights are not stored.
///
/// Weights are held either factored, w^{n,i,j} = a^{n,j} * b^{i,j}, or as a
/// dense N x I x J table. All weights must be finite and nonnegative.
class UtilityModel {
public:
    /// Non-owning handle onto the weight table active at some slot.
    class View {
    public:
        double weight(file_id n, location_id i, cache_id j) const;
        double max_weight() const;

    private:
        friend class UtilityModel;
        View(const UtilityModel* model, int stage) : model_(model), stage_(stage) {}
        const UtilityModel* model_;
        int stage_;
    };

    /// w^{n,i,j} = per_cache[j] for every file and location. Matches the
    /// "one utility value per cache" experiment shorthand.
    static UtilityModel uniform_per_cache(int files, int locations, std::vector<double> per_cache);

    /// Single-cache model with one weight per file (I = J = 1).
    static UtilityModel per_file(std::vector<double> per_file);

    /// Factored form: cache_benefit is N x J, route_benefit is I x J.
    static UtilityModel factored(Matrix cache_benefit, Matrix route_benefit);

    /// Dense table, flat index ((n * I) + i) * J + j.
    static UtilityModel full(int files, int locations, int caches, std::vector<double> weights);

    /// Append a stage that takes effect at `from_slot` (must strictly
    /// increase); `snapshot` supplies the new weight table and must have the
    /// same dimensions.
    void append_stage(slot_t from_slot, const UtilityModel& snapshot);

    View at(slot_t slot) const;
    View stage_view(int stage) const;
    int stage_of(slot_t slot) const;
    int stage_count() const { return static_cast<int>(stages_.size()); }
    bool time_varying() const { return stages_.size() > 1; }

    /// w^{(1)} across all stages; bounds every supergradient entry.
    double max_weight_overall() const;

    int library_size() const { return files_; }
    int num_locations() const { return locations_; }
    int num_caches() const { return caches_; }

private:
    struct Stage {
        slot_t from = 1;
        bool is_factored = false;
        Matrix cache_benefit;  // N x J
        Matrix route_benefit;  // I x J
        std::vector<double> dense;
        double wmax = 0.0;
    };

    UtilityModel() = default;
    static double stage_max(const Stage& s, int files, int locations, int caches);
    void validate_stage(const Stage& s) const;

    std::vector<Stage> stages_;
    int files_ = 0;
    int locations_ = 0;
    int caches_ = 0;
};

}  // namespace bsca
