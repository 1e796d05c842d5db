#include "bsca/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace bsca {

double regret_upper_bound(const BoundInputs& in) {
    if (in.num_caches < 1 || in.capacity < 1 || in.degree < 0 || in.max_weight < 0 ||
        in.horizon < 0) {
        throw std::invalid_argument("bound inputs must be nonnegative");
    }
    return in.max_weight *
           std::sqrt(2.0 * in.degree * in.num_caches * in.capacity * in.horizon);
}

double regret_upper_bound_diminishing(double diameter_sq, double grad_bound, double horizon) {
    if (diameter_sq < 0 || grad_bound < 0 || horizon < 0) {
        throw std::invalid_argument("bound inputs must be nonnegative");
    }
    const double sqrt_t = std::sqrt(horizon);
    return diameter_sq * sqrt_t / 2.0 + (sqrt_t - 0.5) * grad_bound * grad_bound;
}

double regret_lower_bound_uniform(double weight, int library_size, int capacity,
                                  double horizon) {
    if (weight < 0 || library_size < 1 || capacity < 1 || horizon < 0) {
        throw std::invalid_argument("bound inputs must be nonnegative");
    }
    if (2 * capacity >= library_size) {
        throw std::invalid_argument("bound inapplicable: requires C < N/2");
    }
    const double gamma = static_cast<double>(capacity) / library_size;
    return weight * std::sqrt(gamma / std::numbers::pi) * std::sqrt(capacity * horizon);
}

double regret_lower_bound_weighted(std::span<const double> weights, int capacity,
                                   double horizon) {
    const int n = static_cast<int>(weights.size());
    if (capacity < 1 || horizon < 0) {
        throw std::invalid_argument("bound inputs must be nonnegative");
    }
    if (2 * capacity >= n) {
        throw std::invalid_argument("bound inapplicable: requires C < N/2");
    }
    double inv_sum = 0.0;
    for (double w : weights) {
        if (!(w > 0.0)) throw std::invalid_argument("weights must all be positive");
        inv_sum += 1.0 / w;
    }
    // Take the 2C largest weights and pair the k-th largest with the k-th
    // smallest. Swapping any selected weight for a larger unselected one
    // raises its pair sum, so the top 2C are optimal; among pairings of a
    // fixed set, the balanced one maximizes a sum of concave functions of
    // the pair sums. Verified against exhaustive permutation search in the
    // test suite.
    std::vector<double> sorted(weights.begin(), weights.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double numerator = 0.0;
    for (int k = 0; k < capacity; ++k) {
        numerator += std::sqrt(sorted[k] + sorted[2 * capacity - 1 - k]);
    }
    return numerator / std::sqrt(2.0 * std::numbers::pi * inv_sum) * std::sqrt(horizon);
}

}  // namespace bsca
