#include "bsca/utility_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bsca {

double UtilityModel::View::weight(file_id n, location_id i, cache_id j) const {
    const auto& s = model_->stages_[stage_];
    if (s.is_factored) {
        return s.cache_benefit(n, j) * s.route_benefit(i, j);
    }
    const std::size_t idx =
        (static_cast<std::size_t>(n) * model_->locations_ + i) * model_->caches_ + j;
    return s.dense[idx];
}

double UtilityModel::View::max_weight() const { return model_->stages_[stage_].wmax; }

double UtilityModel::stage_max(const Stage& s, int files, int locations, int caches) {
    double wmax = 0.0;
    if (s.is_factored) {
        // max of a product of nonnegative factors is the product of per-cache maxima
        for (int j = 0; j < caches; ++j) {
            double amax = 0.0;
            double bmax = 0.0;
            for (int n = 0; n < files; ++n) amax = std::max(amax, s.cache_benefit(n, j));
            for (int i = 0; i < locations; ++i) bmax = std::max(bmax, s.route_benefit(i, j));
            wmax = std::max(wmax, amax * bmax);
        }
    } else {
        for (double v : s.dense) wmax = std::max(wmax, v);
    }
    return wmax;
}

void UtilityModel::validate_stage(const Stage& s) const {
    auto check = [](double v) {
        if (!std::isfinite(v) || v < 0.0) {
            throw std::invalid_argument("utility weights must be finite and nonnegative");
        }
    };
    if (s.is_factored) {
        for (int j = 0; j < caches_; ++j) {
            for (int n = 0; n < files_; ++n) check(s.cache_benefit(n, j));
            for (int i = 0; i < locations_; ++i) check(s.route_benefit(i, j));
        }
    } else {
        for (double v : s.dense) check(v);
    }
}

UtilityModel UtilityModel::uniform_per_cache(int files, int locations,
                                             std::vector<double> per_cache) {
    if (files < 1 || locations < 1 || per_cache.empty()) {
        throw std::invalid_argument("utility model needs positive dimensions");
    }
    const int caches = static_cast<int>(per_cache.size());
    Matrix a(files, caches);
    Matrix b(locations, caches, 1.0);
    for (int j = 0; j < caches; ++j) {
        for (int n = 0; n < files; ++n) a(n, j) = per_cache[j];
    }
    return factored(std::move(a), std::move(b));
}

UtilityModel UtilityModel::per_file(std::vector<double> per_file) {
    if (per_file.empty()) throw std::invalid_argument("per-file utility vector is empty");
    const int files = static_cast<int>(per_file.size());
    Matrix a(files, 1);
    for (int n = 0; n < files; ++n) a(n, 0) = per_file[n];
    return factored(std::move(a), Matrix(1, 1, 1.0));
}

UtilityModel UtilityModel::factored(Matrix cache_benefit, Matrix route_benefit) {
    if (cache_benefit.rows() < 1 || cache_benefit.cols() < 1 || route_benefit.rows() < 1 ||
        cache_benefit.cols() != route_benefit.cols()) {
        throw std::invalid_argument("factored utility matrices have mismatched shapes");
    }
    UtilityModel m;
    m.files_ = cache_benefit.rows();
    m.locations_ = route_benefit.rows();
    m.caches_ = cache_benefit.cols();
    Stage s;
    s.from = 1;
    s.is_factored = true;
    s.cache_benefit = std::move(cache_benefit);
    s.route_benefit = std::move(route_benefit);
    m.validate_stage(s);
    s.wmax = stage_max(s, m.files_, m.locations_, m.caches_);
    m.stages_.push_back(std::move(s));
    return m;
}

UtilityModel UtilityModel::full(int files, int locations, int caches,
                                std::vector<double> weights) {
    if (files < 1 || locations < 1 || caches < 1 ||
        weights.size() != static_cast<std::size_t>(files) * locations * caches) {
        throw std::invalid_argument("dense utility table has the wrong size");
    }
    UtilityModel m;
    m.files_ = files;
    m.locations_ = locations;
    m.caches_ = caches;
    Stage s;
    s.from = 1;
    s.dense = std::move(weights);
    m.validate_stage(s);
    s.wmax = stage_max(s, files, locations, caches);
    m.stages_.push_back(std::move(s));
    return m;
}

void UtilityModel::append_stage(slot_t from_slot, const UtilityModel& snapshot) {
    if (snapshot.files_ != files_ || snapshot.locations_ != locations_ ||
        snapshot.caches_ != caches_) {
        throw std::invalid_argument("stage dimensions do not match the base model");
    }
    if (from_slot <= stages_.back().from) {
        throw std::invalid_argument("stage start slots must strictly increase");
    }
    Stage s = snapshot.stages_.front();
    s.from = from_slot;
    stages_.push_back(std::move(s));
}

int UtilityModel::stage_of(slot_t slot) const {
    int stage = 0;
    for (std::size_t k = 1; k < stages_.size(); ++k) {
        if (stages_[k].from <= slot) stage = static_cast<int>(k);
    }
    return stage;
}

UtilityModel::View UtilityModel::at(slot_t slot) const { return View(this, stage_of(slot)); }

UtilityModel::View UtilityModel::stage_view(int stage) const { return View(this, stage); }

double UtilityModel::max_weight_overall() const {
    double wmax = 0.0;
    for (const auto& s : stages_) wmax = std::max(wmax, s.wmax);
    return wmax;
}

}  // namespace bsca
